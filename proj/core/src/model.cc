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

#include "cdl/model.h"

#include <cmath>
#include <stdexcept>

namespace cdl {
namespace {

bool Finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<std::string> ValidateVehicleParams(const VehicleParams& p) {
  std::vector<std::string> out;
  if (!(p.mass > 0.0)) out.push_back("vehicle.mass must be > 0");
  if (!(p.inertia_c > 0.0)) out.push_back("vehicle.inertia must be > 0");
  if (!(p.half_track > 0.0)) {
    out.push_back("vehicle.half_track must be > 0 (wheel torque map singular)");
  }
  if (!(p.wheel_radius > 0.0)) {
    out.push_back(
        "vehicle.wheel_radius must be > 0 (wheel torque map singular)");
  }
  if (!(p.com_offset >= 0.0)) out.push_back("vehicle.com_offset must be >= 0");
  const FrictionCoeffs& f = p.friction;
  if (!Finite(f.cv1) || !Finite(f.cv2) || !Finite(f.cw1) || !Finite(f.cw2)) {
    out.push_back("vehicle.friction coefficients must be finite");
  }
  return out;
}

Eigen::Vector3d Kinematics(const GeneralCoordinates& q, const BodyVelocity& u) {
  return {u.v * std::cos(q.theta), u.v * std::sin(q.theta), u.omega};
}

Eigen::Matrix<double, 3, 2> KinematicJacobian(double theta) {
  Eigen::Matrix<double, 3, 2> j;
  j << std::cos(theta), 0.0, std::sin(theta), 0.0, 0.0, 1.0;
  return j;
}

double ConstraintResidual(const GeneralCoordinates& q,
                          const Eigen::Vector3d& pose_rate) {
  return pose_rate.x() * std::sin(q.theta) - pose_rate.y() * std::cos(q.theta);
}

Eigen::Matrix2d ReducedInertia(const VehicleParams& p) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = p.mass;
  m(1, 1) = p.mass * p.com_offset * p.com_offset + p.inertia_c;
  return m;
}

Eigen::Matrix2d Coriolis(const VehicleParams& p, double omega) {
  const double c = p.mass * p.com_offset * omega;
  Eigen::Matrix2d m;
  m << 0.0, -c, c, 0.0;
  return m;
}

Eigen::Vector2d Friction(const VehicleParams& p, const BodyVelocity& u) {
  const FrictionCoeffs& f = p.friction;
  return {f.cv1 * p.mass * u.v + f.cv2 * p.mass * u.v * u.v,
          f.cw1 * p.inertia_c * u.omega +
              f.cw2 * p.inertia_c * u.omega * u.omega};
}

Eigen::Vector2d UnknownDynamics(const VehicleParams& p, const BodyVelocity& u) {
  return Coriolis(p, u.omega) * u.AsVector() + Friction(p, u);
}

Eigen::Vector2d BodyAccel(const VehicleParams& p, const BodyVelocity& u,
                          const TransformedTorque& tau) {
  const Eigen::Vector2d rhs = tau.AsVector() - UnknownDynamics(p, u);
  const Eigen::Matrix2d m = ReducedInertia(p);
  return {rhs.x() / m(0, 0), rhs.y() / m(1, 1)};
}

TransformedTorque TransformWheelTorques(const VehicleParams& p,
                                        const WheelTorque& tau) {
  const double r = p.wheel_radius;
  const double big_r = p.half_track;
  return {(tau.tau_right + tau.tau_left) / r,
          big_r * (tau.tau_right - tau.tau_left) / r};
}

WheelTorque WheelTorques(const VehicleParams& p, const TransformedTorque& tau) {
  if (!(p.wheel_radius > 0.0) || !(p.half_track > 0.0)) {
    throw std::invalid_argument(
        "wheel torque map is singular: wheel_radius and half_track must be "
        "positive");
  }
  // Sum and difference channels decouple.
  const double sum = p.wheel_radius * tau.tau_v;
  const double diff = p.wheel_radius * tau.tau_w / p.half_track;
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

Eigen::Matrix3d FullInertia(const VehicleParams& p, double theta) {
  const double md = p.mass * p.com_offset;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Eigen::Matrix3d m;
  m << p.mass, 0.0, -md * s,  //
      0.0, p.mass, md * c,    //
      -md * s, md * c, md * p.com_offset + p.inertia_c;
  return m;
}

}  // namespace cdl
