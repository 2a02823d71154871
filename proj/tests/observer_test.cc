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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cdl/config.h"
#include "cdl/fleet.h"
#include "cdl/integrator.h"
#include "cdl/metrics.h"

namespace cdl {
namespace {

TEST(RotatingFrame, Identity) {
  const RotatingFramePosition p = RotatingFrame({1, 2, 0});
  EXPECT_DOUBLE_EQ(p.px, 1.0);
  EXPECT_DOUBLE_EQ(p.py, 2.0);
}

TEST(RotatingFrame, QuarterTurn) {
  const RotatingFramePosition p = RotatingFrame({1, 2, std::numbers::pi / 2});
  EXPECT_NEAR(p.px, 2.0, 1e-15);
  EXPECT_NEAR(p.py, -1.0, 1e-15);
}

TEST(RotatingFrame, Isometry) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const GeneralCoordinates q{dist(rng), dist(rng), dist(rng)};
    const RotatingFramePosition p = RotatingFrame(q);
    EXPECT_NEAR(p.px * p.px + p.py * p.py, q.x * q.x + q.y * q.y, 1e-13 * 200);
  }
}

TEST(ObserverRates, EquilibriumAtZeroInnovation) {
  const ObserverState s{0.3, 0.0, 1.5, 0.0};
  const Eigen::Vector4d r = ObserverRates(s, {}, 0.3, {1.5, 0.0});
  EXPECT_TRUE(r.isZero(0.0));
}

TEST(ObserverRates, HighGainScaling) {
  const ObserverGains g{1, 1, 0.01};
  const ObserverState s{0.0, 0.0, 0.0, 0.0};
  const Eigen::Vector4d r = ObserverRates(s, g, 0.01, {0.0, 0.0});
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_NEAR(r[1], 100.0, 1e-10);
  EXPECT_DOUBLE_EQ(r[2], 0.0);
  EXPECT_DOUBLE_EQ(r[3], 0.0);
}

TEST(ObserverRates, RotatingFrameCoupling) {
  const ObserverState s{0.0, 0.5, 0.7, 0.0};
  const Eigen::Vector4d r = ObserverRates(s, {1, 1, 0.01}, 0.0, {0.7, 2.0});
  EXPECT_DOUBLE_EQ(r[2], 1.0);
}

TEST(ObserverRates, LinearInInnovation) {
  const ObserverGains g{1.3, 0.7, 0.02};
  const ObserverState s{0.1, 0.4, -0.2, 0.9};
  const auto correction = [&](double scale) {
    const Eigen::Vector4d base = ObserverRates(s, g, s.theta_hat, {s.px_hat, 0.5});
    return Eigen::Vector4d(
        ObserverRates(s, g, s.theta_hat + scale * 0.03,
                      {s.px_hat + scale * 0.05, 0.5}) -
        base);
  };
  EXPECT_LT((correction(2.0) - 2.0 * correction(1.0)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Observer, EstimateProjection) {
  const BodyVelocity u = Estimate({0.2, 0.5, 3.0, 1.0});
  EXPECT_EQ(u.v, 1.0);
  EXPECT_EQ(u.omega, 0.5);
}

TEST(Observer, InitialStateLocksToMeasurement) {
  const GeneralCoordinates q{1.0, -2.0, 0.4};
  const ObserverState s = InitialObserverState(q);
  EXPECT_EQ(s.theta_hat, q.theta);
  EXPECT_EQ(s.px_hat, RotatingFrame(q).px);
  EXPECT_EQ(s.omega_hat, 0.0);
  EXPECT_EQ(s.v_hat, 0.0);
}

TEST(Observer, HeadingErrorDecaysOnFastTimeScale) {
  const ObserverGains g{1, 1, 0.01};
  const double omega = 1.0;
  // State: (theta, theta_hat, omega_hat); theta advances at constant omega.
  using State = Eigen::Vector3d;
  const auto rate = [&](double, const State& x) {
    const ObserverState s{x[1], x[2], 0.0, 0.0};
    const Eigen::Vector4d r = ObserverRates(s, g, x[0], {0.0, 0.0});
    return State(omega, r[0], r[1]);
  };
  State x(0.3, 0.25, 0.0);
  const auto error = [&](const State& s) {
    return Eigen::Vector2d(s[0] - s[1], g.delta * (omega - s[2])).norm();
  };
  const double e0 = error(x);
  const double dt = g.delta / 100.0;
  for (int k = 0; k < 2000; ++k) x = Rk4Step(rate, x, k * dt, dt);
  EXPECT_LT(error(x), 0.05 * e0);
}

TEST(ObserverGains, Validation) {
  EXPECT_TRUE(ValidateObserverGains({}).empty());
  EXPECT_FALSE(ValidateObserverGains({0.0, 1.0, 0.01}).empty());
  EXPECT_FALSE(ValidateObserverGains({1.0, -1.0, 0.01}).empty());
  EXPECT_FALSE(ValidateObserverGains({1.0, 1.0, 0.0}).empty());
}

double SteadyObserverError(double delta) {
  FleetConfig cfg = RingFleetConfig();
  cfg.references.resize(1);
  cfg.graph = CycleGraph(1);
  cfg.observer.delta = delta;
  cfg.sim.dt = delta / 10.0;
  cfg.sim.t_end = 8.0;
  const RunLog log = RunLearning(cfg);
  const auto err = MaxObserverError(log.records, 1, 4.0);
  return err[0].maxCoeff();
}

TEST(Observer, SmallerDeltaDoesNotIncreaseSteadyError) {
  const double coarse = SteadyObserverError(0.01);
  const double fine = SteadyObserverError(0.005);
  EXPECT_LE(fine, coarse);
}

}  // namespace
}  // namespace cdl
