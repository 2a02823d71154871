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

#ifndef CDL_OBSERVER_H_
#define CDL_OBSERVER_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdl/model.h"

namespace cdl {

// High-gain observer gains. The correction gains scale as l1/delta and
// l2/delta^2; [[-l1, 1], [-l2, 0]] is Hurwitz for any l1, l2 > 0.
struct ObserverGains {
  double l1 = 1.0;
  double l2 = 1.0;
  double delta = 0.01;  // s
};

struct ObserverState {
  double theta_hat = 0.0;
  double omega_hat = 0.0;
  double px_hat = 0.0;
  double v_hat = 0.0;

  Eigen::Vector4d AsVector() const {
    return {theta_hat, omega_hat, px_hat, v_hat};
  }
  static ObserverState FromVector(const Eigen::Vector4d& s) {
    return {s[0], s[1], s[2], s[3]};
  }
};

// Position expressed along axes parallel to the body frame, origin fixed at
// the world origin.
struct RotatingFramePosition {
  double px = 0.0;
  double py = 0.0;
};

std::vector<std::string> ValidateObserverGains(const ObserverGains& g);

RotatingFramePosition RotatingFrame(const GeneralCoordinates& q);

// Time derivative of (theta_hat, omega_hat, px_hat, v_hat) driven by the
// measured heading and rotating-frame position.
Eigen::Vector4d ObserverRates(const ObserverState& s, const ObserverGains& g,
                              double theta_meas,
                              const RotatingFramePosition& p_meas);

inline BodyVelocity Estimate(const ObserverState& s) {
  return {s.v_hat, s.omega_hat};
}

// Starts on the measurement with zero velocity estimates, so the first
// innovation is zero.
ObserverState InitialObserverState(const GeneralCoordinates& q_meas);

}  // namespace cdl

#endif  // CDL_OBSERVER_H_
