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

#include "cdl/control.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdl {
namespace {

TorqueCommand NeuralTorque(const TrackingError& e, const ReferenceSample& ref,
                           const BodyVelocity& u_hat,
                           const Eigen::Vector2d& udot_c,
                           const Eigen::Matrix2d& reduced_inertia,
                           const WeightMatrix& weights,
                           const Eigen::VectorXd& basis,
                           const ControllerGains& g) {
  const BodyVelocity u_c = VirtualVelocity(e, ref, g);
  const Eigen::Vector2d u_tilde = u_c.AsVector() - u_hat.AsVector();
  const Eigen::Vector2d coupling(e.ex, std::sin(e.etheta) / g.ky);
  const Eigen::Vector2d raw = reduced_inertia * udot_c +
                              Predict(weights, basis) + g.ku * u_tilde +
                              coupling;
  TorqueCommand out;
  out.tau.tau_v = std::clamp(raw.x(), -g.tau_max, g.tau_max);
  out.tau.tau_w = std::clamp(raw.y(), -g.tau_max, g.tau_max);
  out.saturated = out.tau.tau_v != raw.x() || out.tau.tau_w != raw.y();
  return out;
}

}  // namespace

std::vector<std::string> ValidateControllerGains(const ControllerGains& g) {
  std::vector<std::string> out;
  if (!(g.kx > 0.0)) out.push_back("controller.kx must be > 0");
  if (!(g.ky > 0.0)) out.push_back("controller.ky must be > 0");
  if (!(g.ktheta > 0.0)) out.push_back("controller.ktheta must be > 0");
  if (!(g.ku > 0.0)) out.push_back("controller.ku must be > 0");
  if (!(g.gamma_big > 0.0)) out.push_back("controller.gamma_big must be > 0");
  if (!(g.gamma_small >= 0.0)) {
    out.push_back("controller.gamma_small must be >= 0");
  }
  if (!(g.beta >= 0.0)) out.push_back("controller.beta must be >= 0");
  if (!(g.tau_max > 0.0)) out.push_back("controller.tau_max must be > 0");
  return out;
}

double WrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // pi - fmod(pi - a, 2 pi) lands in (-pi, pi] once the remainder is
  // shifted into [0, 2 pi).
  double r = std::fmod(kPi - angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  const double wrapped = kPi - r;
  return wrapped <= -kPi ? kPi : wrapped;
}

TrackingError ComputeTrackingError(const GeneralCoordinates& q,
                                   const ReferenceSample& ref) {
  const double c = std::cos(q.theta);
  const double s = std::sin(q.theta);
  const double dx = ref.x_r - q.x;
  const double dy = ref.y_r - q.y;
  return {c * dx + s * dy, -s * dx + c * dy, WrapAngle(ref.theta_r - q.theta)};
}

BodyVelocity VirtualVelocity(const TrackingError& e, const ReferenceSample& ref,
                             const ControllerGains& g) {
  return {ref.v_r * std::cos(e.etheta) + g.kx * e.ex,
          ref.omega_r + ref.v_r * g.ky * e.ey + g.ktheta * std::sin(e.etheta)};
}

Eigen::Vector2d VirtualVelocityRate(const TrackingError& e,
                                    const ReferenceSample& ref,
                                    const BodyVelocity& u_hat,
                                    const ControllerGains& g) {
  const double c = std::cos(e.etheta);
  const double s = std::sin(e.etheta);
  const double etheta_dot = ref.omega_r - u_hat.omega;
  const double ex_dot = ref.v_r * c + u_hat.omega * e.ey - u_hat.v;
  const double ey_dot = ref.v_r * s - u_hat.omega * e.ex;
  const double vdot_c = ref.vdot_r * c - ref.v_r * s * etheta_dot + g.kx * ex_dot;
  const double wdot_c = ref.omegadot_r + ref.vdot_r * g.ky * e.ey +
                        ref.v_r * g.ky * ey_dot + g.ktheta * c * etheta_dot;
  return {vdot_c, wdot_c};
}

TorqueCommand AdaptiveTorque(const TrackingError& e, const ReferenceSample& ref,
                             const BodyVelocity& u_hat,
                             const Eigen::Vector2d& udot_c,
                             const Eigen::Matrix2d& reduced_inertia,
                             const WeightMatrix& weights,
                             const Eigen::VectorXd& basis,
                             const ControllerGains& g) {
  return NeuralTorque(e, ref, u_hat, udot_c, reduced_inertia, weights, basis,
                      g);
}

TorqueCommand ExperienceTorque(const TrackingError& e,
                               const ReferenceSample& ref,
                               const BodyVelocity& u_hat,
                               const Eigen::Vector2d& udot_c,
                               const Eigen::Matrix2d& reduced_inertia,
                               const WeightMatrix& consolidated,
                               const Eigen::VectorXd& basis,
                               const ControllerGains& g) {
  return NeuralTorque(e, ref, u_hat, udot_c, reduced_inertia, consolidated,
                      basis, g);
}

WeightMatrix WeightUpdateRate(const Eigen::VectorXd& basis,
                              const Eigen::Vector2d& u_tilde,
                              const WeightMatrix& own,
                              std::span<const NeighborWeights> neighbors,
                              const ControllerGains& g) {
  WeightMatrix rate = g.gamma_big * basis * u_tilde.transpose();
  rate -= g.gamma_small * own;
  if (g.beta != 0.0) {
    WeightMatrix consensus = WeightMatrix::Zero(own.rows(), 2);
    for (const NeighborWeights& nb : neighbors) {
      if (nb.a_ij == 0.0) continue;
      consensus += nb.a_ij * (own - *nb.weights);
    }
    rate -= g.beta * consensus;
  }
  return rate;
}

WeightMatrix ConsolidateWeights(std::span<const WeightSnapshot> history,
                                double t_a, double t_b) {
  if (history.empty()) {
    throw std::invalid_argument("consolidation needs a weight history");
  }
  if (!(t_b > t_a)) {
    throw std::invalid_argument("consolidation window needs t_b > t_a");
  }
  const double slack = 1e-9 * (1.0 + std::abs(history.back().t));
  if (t_a < history.front().t - slack || t_b > history.back().t + slack) {
    throw std::invalid_argument(
        "consolidation window lies outside the logged weight history");
  }

  // Exact integral of the linear interpolant between consecutive snapshots,
  // clipped to the window.
  const auto interpolate = [&](size_t k, double t) -> WeightMatrix {
    const WeightSnapshot& a = history[k];
    const WeightSnapshot& b = history[k + 1];
    const double span = b.t - a.t;
    const double s = span > 0.0 ? (t - a.t) / span : 0.0;
    return (1.0 - s) * a.weights + s * b.weights;
  };

  WeightMatrix integral = WeightMatrix::Zero(history.front().weights.rows(), 2);
  if (history.size() == 1) return history.front().weights;
  for (size_t k = 0; k + 1 < history.size(); ++k) {
    const double lo = std::max(t_a, history[k].t);
    const double hi = std::min(t_b, history[k + 1].t);
    if (hi <= lo) continue;
    integral += 0.5 * (hi - lo) * (interpolate(k, lo) + interpolate(k, hi));
  }
  return integral / (t_b - t_a);
}

double LyapunovValue(const TrackingError& e, const Eigen::Vector2d& u_tilde,
                     double w_tilde_term, const ControllerGains& g,
                     const Eigen::Matrix2d& reduced_inertia) {
  return 0.5 * e.ex * e.ex + 0.5 * e.ey * e.ey +
         (1.0 - std::cos(e.etheta)) / g.ky +
         0.5 * u_tilde.dot(reduced_inertia * u_tilde) +
         w_tilde_term / (2.0 * g.gamma_big);
}

}  // namespace cdl
