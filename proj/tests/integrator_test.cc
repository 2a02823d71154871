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

#include "cdl/integrator.h"

#include <cmath>

#include <gtest/gtest.h>

#include "cdl/model.h"

namespace cdl {
namespace {

TEST(Rk4, ZeroRateLeavesStateUnchanged) {
  const Eigen::Vector3d x(1.5, -2.0, 3.25);
  const auto rate = [](double, const Eigen::Vector3d&) {
    return Eigen::Vector3d::Zero().eval();
  };
  EXPECT_EQ(Rk4Step(rate, x, 0.0, 0.1), x);
}

TEST(Rk4, ExponentialOneStep) {
  const auto rate = [](double, const double& x) { return x; };
  const double x1 = Rk4Step(rate, 1.0, 0.0, 0.1);
  EXPECT_NEAR(x1, 1.1051708333333333, 1e-15);
  EXPECT_NEAR(std::exp(0.1) - x1, 8.47e-8, 1e-9);
}

double OscillatorError(double dt) {
  using State = Eigen::Vector2d;
  const auto rate = [](double, const State& s) { return State(s[1], -s[0]); };
  State s(1.0, 0.0);
  const double t_end = 10.0;
  const int steps = static_cast<int>(std::lround(t_end / dt));
  for (int k = 0; k < steps; ++k) s = Rk4Step(rate, s, k * dt, dt);
  return (s - State(std::cos(t_end), -std::sin(t_end))).norm();
}

TEST(Rk4, FourthOrderConvergence) {
  const double e1 = OscillatorError(0.1);
  const double e2 = OscillatorError(0.05);
  const double e3 = OscillatorError(0.025);
  EXPECT_NEAR(e1 / e2, 16.0, 16.0 * 0.2);
  EXPECT_NEAR(e2 / e3, 16.0, 16.0 * 0.2);
}

TEST(Rk4, TimeArgumentIsForwarded) {
  // x' = 3 t^2 is integrated exactly by a fourth-order method.
  const auto rate = [](double t, const double&) { return 3.0 * t * t; };
  double x = 0.0;
  for (int k = 0; k < 10; ++k) x = Rk4Step(rate, x, 0.1 * k, 0.1);
  EXPECT_NEAR(x, 1.0, 1e-14);
}

// Unforced, frictionless reduced dynamics conserve u^T M u / 2 because the
// Coriolis matrix is skew-symmetric.
double EnergyDrift(double dt) {
  VehicleParams p;
  p.com_offset = 0.25;
  p.friction = {0.0, 0.0, 0.0, 0.0};
  const Eigen::Matrix2d m = ReducedInertia(p);
  const auto rate = [&](double, const Eigen::Vector2d& u) {
    return BodyAccel(p, BodyVelocity::FromVector(u), {0.0, 0.0});
  };
  Eigen::Vector2d u(1.2, 2.5);
  const double e0 = 0.5 * u.dot(m * u);
  const int steps = static_cast<int>(std::lround(5.0 / dt));
  for (int k = 0; k < steps; ++k) u = Rk4Step(rate, u, k * dt, dt);
  return std::abs(0.5 * u.dot(m * u) - e0) / e0;
}

TEST(Rk4, KineticEnergyConservedWithoutFriction) {
  const double coarse = EnergyDrift(0.02);
  const double fine = EnergyDrift(0.01);
  EXPECT_LT(coarse, 1e-6);
  EXPECT_LT(fine, coarse);
  EXPECT_GT(coarse / fine, 12.0);
}

}  // namespace
}  // namespace cdl
