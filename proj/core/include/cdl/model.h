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

#ifndef CDL_MODEL_H_
#define CDL_MODEL_H_

#include <string>
#include <vector>

#include <Eigen/Core>

namespace cdl {

// Pose of one vehicle in the world frame. Heading is unwrapped.
struct GeneralCoordinates {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Reduced 2-DOF velocity measured at the wheel-axle midpoint.
struct BodyVelocity {
  double v = 0.0;
  double omega = 0.0;

  Eigen::Vector2d AsVector() const { return {v, omega}; }
  static BodyVelocity FromVector(const Eigen::Vector2d& u) {
    return {u.x(), u.y()};
  }
};

// Friction F = (cv1*m*v + cv2*m*v^2, cw1*I*w + cw2*I*w^2).
// Note the squared terms are not sign-corrected: for v < 0 the quadratic
// term pushes forward.
struct FrictionCoeffs {
  double cv1 = 0.1;
  double cv2 = 0.05;
  double cw1 = 0.2;
  double cw2 = 0.1;
};

struct VehicleParams {
  double mass = 2.0;          // kg
  double inertia_c = 0.2;     // kg m^2, about the center of mass
  double half_track = 0.15;   // m, half the wheel separation
  double wheel_radius = 0.05; // m
  double com_offset = 0.1;    // m, axle midpoint to center of mass
  FrictionCoeffs friction;
};

// Force/moment pair acting on the reduced dynamics.
struct TransformedTorque {
  double tau_v = 0.0;  // N
  double tau_w = 0.0;  // N m

  Eigen::Vector2d AsVector() const { return {tau_v, tau_w}; }
};

struct WheelTorque {
  double tau_right = 0.0;
  double tau_left = 0.0;
};

// Returns one message per violated parameter invariant; empty when valid.
std::vector<std::string> ValidateVehicleParams(const VehicleParams& p);

// (x', y', theta') = J(q) u.
Eigen::Vector3d Kinematics(const GeneralCoordinates& q, const BodyVelocity& u);

// J(q), the 3x2 map from body velocity to pose rate.
Eigen::Matrix<double, 3, 2> KinematicJacobian(double theta);

// A(q)^T q', zero for any motion without lateral slip.
double ConstraintResidual(const GeneralCoordinates& q,
                          const Eigen::Vector3d& pose_rate);

// diag(m, m d^2 + I). Constant and SPD.
Eigen::Matrix2d ReducedInertia(const VehicleParams& p);

// [[0, -m d w], [m d w, 0]].
Eigen::Matrix2d Coriolis(const VehicleParams& p, double omega);

Eigen::Vector2d Friction(const VehicleParams& p, const BodyVelocity& u);

// C(u) u + F(u): the part of the reduced dynamics hidden from the
// controller. Only simulation-side code (plant, metrics) may call this.
Eigen::Vector2d UnknownDynamics(const VehicleParams& p, const BodyVelocity& u);

// u' = M^-1 (tau - C u - F). Gravity is identically zero on the plane.
Eigen::Vector2d BodyAccel(const VehicleParams& p, const BodyVelocity& u,
                          const TransformedTorque& tau);

// tau_bar = [[1/r, 1/r], [R/r, -R/r]] tau.
TransformedTorque TransformWheelTorques(const VehicleParams& p,
                                        const WheelTorque& tau);

// Inverse of TransformWheelTorques. Throws std::invalid_argument when the map
// is singular (r or R not positive).
WheelTorque WheelTorques(const VehicleParams& p, const TransformedTorque& tau);

// Full 3x3 inertia in generalized coordinates. Used to cross-check the
// reduced model.
Eigen::Matrix3d FullInertia(const VehicleParams& p, double theta);

}  // namespace cdl

#endif  // CDL_MODEL_H_
