/*
 * Copyright 2026 The CDL Fleet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cdl/observer.h"

#include <cmath>

namespace cdl {

std::vector<std::string> ValidateObserverGains(const ObserverGains& g) {
  std::vector<std::string> out;
  if (!(g.l1 > 0.0)) out.push_back("observer.l1 must be > 0 (Hurwitz)");
  if (!(g.l2 > 0.0)) out.push_back("observer.l2 must be > 0 (Hurwitz)");
  if (!(g.delta > 0.0)) out.push_back("observer.delta must be > 0");
  return out;
}

RotatingFramePosition RotatingFrame(const GeneralCoordinates& q) {
  const double c = std::cos(q.theta);
  const double s = std::sin(q.theta);
  return {q.x * c + q.y * s, q.y * c - q.x * s};
}

Eigen::Vector4d ObserverRates(const ObserverState& s, const ObserverGains& g,
                              double theta_meas,
                              const RotatingFramePosition& p_meas) {
  const double k1 = g.l1 / g.delta;
  const double k2 = g.l2 / (g.delta * g.delta);
  const double e_theta = theta_meas - s.theta_hat;
  const double e_px = p_meas.px - s.px_hat;
  return {s.omega_hat + k1 * e_theta,                    //
          k2 * e_theta,                                  //
          s.v_hat + p_meas.py * s.omega_hat + k1 * e_px, //
          k2 * e_px};
}

ObserverState InitialObserverState(const GeneralCoordinates& q_meas) {
  const RotatingFramePosition p = RotatingFrame(q_meas);
  return {q_meas.theta, 0.0, p.px, 0.0};
}

}  // namespace cdl
