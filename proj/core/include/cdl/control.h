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

#ifndef CDL_CONTROL_H_
#define CDL_CONTROL_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdl/model.h"
#include "cdl/rbf.h"

// Tracking controller, adaptive NN torque law and cooperative weight update.
//
// Nothing in this header sees FrictionCoeffs or the Coriolis model: the
// controller is given the reduced inertia matrix and the measured/estimated
// signals only, and relies on the RBF network for the rest of the dynamics.

namespace cdl {

// Pose error projected onto the body frame; etheta is wrapped into (-pi, pi].
struct TrackingError {
  double ex = 0.0;
  double ey = 0.0;
  double etheta = 0.0;
};

struct ControllerGains {
  double kx = 1.0;
  double ky = 1.0;
  double ktheta = 1.0;
  double ku = 2.0;
  double gamma_big = 10.0;     // adaptation gain
  double gamma_small = 0.001;  // leakage
  double beta = 10.0;          // consensus coupling
  double tau_max = 50.0;       // per-channel saturation of the command
};

struct ReferenceSample {
  double x_r = 0.0;
  double y_r = 0.0;
  double theta_r = 0.0;
  double v_r = 0.0;
  double omega_r = 0.0;
  double vdot_r = 0.0;
  double omegadot_r = 0.0;
};

struct TorqueCommand {
  TransformedTorque tau;
  bool saturated = false;
};

struct NeighborWeights {
  double a_ij = 0.0;
  const WeightMatrix* weights = nullptr;
};

struct WeightSnapshot {
  double t = 0.0;
  WeightMatrix weights;
};

std::vector<std::string> ValidateControllerGains(const ControllerGains& g);

// Maps any angle into (-pi, pi]; -pi itself maps to +pi.
double WrapAngle(double angle);

TrackingError ComputeTrackingError(const GeneralCoordinates& q,
                                   const ReferenceSample& ref);

// Kinematic backstepping command u_c.
BodyVelocity VirtualVelocity(const TrackingError& e, const ReferenceSample& ref,
                             const ControllerGains& g);

// Analytic time derivative of u_c, with the body velocity in the error
// dynamics replaced by the observer estimate.
Eigen::Vector2d VirtualVelocityRate(const TrackingError& e,
                                    const ReferenceSample& ref,
                                    const BodyVelocity& u_hat,
                                    const ControllerGains& g);

// tau = M u_c' + W^T S + ku (u_c - u_hat) + (ex, sin(etheta)/ky), clamped to
// +-tau_max per channel.
TorqueCommand AdaptiveTorque(const TrackingError& e, const ReferenceSample& ref,
                             const BodyVelocity& u_hat,
                             const Eigen::Vector2d& udot_c,
                             const Eigen::Matrix2d& reduced_inertia,
                             const WeightMatrix& weights,
                             const Eigen::VectorXd& basis,
                             const ControllerGains& g);

// Same law with frozen, consolidated weights. No adaptation happens in this
// mode.
TorqueCommand ExperienceTorque(const TrackingError& e,
                               const ReferenceSample& ref,
                               const BodyVelocity& u_hat,
                               const Eigen::Vector2d& udot_c,
                               const Eigen::Matrix2d& reduced_inertia,
                               const WeightMatrix& consolidated,
                               const Eigen::VectorXd& basis,
                               const ControllerGains& g);

// W_i' = Gamma S u_tilde^T - gamma W_i - beta sum_j a_ij (W_i - W_j).
//
// u_tilde is the observer-based surrogate u_c - u_hat. Neighbors are summed
// in the order given; callers pass them in a fixed index order so the result
// does not depend on which agent is evaluated first.
WeightMatrix WeightUpdateRate(const Eigen::VectorXd& basis,
                              const Eigen::Vector2d& u_tilde,
                              const WeightMatrix& own,
                              std::span<const NeighborWeights> neighbors,
                              const ControllerGains& g);

// Time average of piecewise-linear weight history over [t_a, t_b].
//
// Snapshots must be sorted by time. Throws std::invalid_argument when
// t_b <= t_a, the history is empty, or the window leaves the logged range.
WeightMatrix ConsolidateWeights(std::span<const WeightSnapshot> history,
                                double t_a, double t_b);

// ex^2/2 + ey^2/2 + (1 - cos etheta)/ky + u~^T M u~ / 2 + w_tilde_term/(2 Gamma).
// Pass w_tilde_term = 0 when the ideal weights are unknown (always, at run
// time).
double LyapunovValue(const TrackingError& e, const Eigen::Vector2d& u_tilde,
                     double w_tilde_term, const ControllerGains& g,
                     const Eigen::Matrix2d& reduced_inertia);

}  // namespace cdl

#endif  // CDL_CONTROL_H_
