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

#include "cdl/rbf.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace cdl {
namespace {

RbfLattice DefaultLattice() {
  return BuildLattice({0, 0}, {4, 4}, {5, 5}, 0.7);
}

std::vector<Eigen::Vector2d> Circle(const Eigen::Vector2d& center, double radius,
                                    double t0, double t1, double dt) {
  std::vector<Eigen::Vector2d> out;
  const long n = std::lround((t1 - t0) / dt);
  for (long k = 0; k < n; ++k) {
    const double t = t0 + k * dt;
    out.push_back(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return out;
}

TEST(BuildLattice, FiveByFiveGrid) {
  const RbfLattice lat = DefaultLattice();
  ASSERT_EQ(lat.size(), 25);
  EXPECT_EQ(lat.centers.front(), Eigen::Vector2d(0, 0));
  EXPECT_EQ(lat.centers.back(), Eigen::Vector2d(4, 4));
  EXPECT_EQ(lat.spacing(), Eigen::Vector2d(1, 1));
  EXPECT_DOUBLE_EQ(lat.width, 0.7);
  for (int i = 0; i < lat.size(); ++i) {
    for (int j = i + 1; j < lat.size(); ++j) {
      EXPECT_NE(lat.centers[i], lat.centers[j]);
    }
  }
}

TEST(BuildLattice, UnitSquare) {
  const RbfLattice lat = BuildLattice({0, 0}, {1, 1}, {2, 2}, 0.5);
  ASSERT_EQ(lat.size(), 4);
  for (const auto& c : lat.centers) {
    EXPECT_TRUE(c.x() == 0.0 || c.x() == 1.0);
    EXPECT_TRUE(c.y() == 0.0 || c.y() == 1.0);
  }
}

TEST(BuildLattice, SymmetricBoxContainsOrigin) {
  const RbfLattice lat = BuildLattice({-1, -1}, {1, 1}, {3, 3}, 0.5);
  bool found = false;
  for (const auto& c : lat.centers) found = found || c.isZero(0.0);
  EXPECT_TRUE(found);
}

TEST(BuildLattice, RejectsBadInput) {
  EXPECT_THROW(BuildLattice({0, 0}, {1, 1}, {2, 2}, 0.0), std::invalid_argument);
  EXPECT_THROW(BuildLattice({0, 0}, {1, 1}, {2, 2}, -1.0), std::invalid_argument);
  EXPECT_THROW(BuildLattice({0, 0}, {0, 1}, {2, 2}, 0.5), std::invalid_argument);
  EXPECT_THROW(BuildLattice({1, 0}, {0, 1}, {2, 2}, 0.5), std::invalid_argument);
  EXPECT_THROW(BuildLattice({0, 0}, {1, 1}, {1, 2}, 0.5), std::invalid_argument);
}

TEST(EvalBasis, UnitAtCenter) {
  const RbfLattice lat = DefaultLattice();
  const Eigen::VectorXd s = EvalBasis(lat, lat.centers[3]);
  EXPECT_EQ(s[3], 1.0);
  for (int i = 0; i < lat.size(); ++i) {
    if (i != 3) {
      EXPECT_LT(s[i], 1.0);
    }
  }
}

TEST(EvalBasis, OneWidthAway) {
  const RbfLattice lat = DefaultLattice();
  const Eigen::VectorXd s = EvalBasis(lat, lat.centers[12] + Eigen::Vector2d(0.7, 0));
  EXPECT_NEAR(s[12], 0.36787944, 5e-9);
}

TEST(EvalBasis, BoundsAndNormBound) {
  const RbfLattice lat = DefaultLattice();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  double s_max = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Eigen::VectorXd s = EvalBasis(lat, {dist(rng), dist(rng)});
    EXPECT_GT(s.minCoeff(), 0.0);
    EXPECT_LE(s.maxCoeff(), 1.0);
    s_max = std::max(s_max, s.norm());
  }
  EXPECT_LE(s_max, std::sqrt(25.0));
  EXPECT_GT(s_max, 1.0);
}

TEST(EvalBasis, RadiallyMonotone) {
  const RbfLattice lat = DefaultLattice();
  const Eigen::Vector2d dir = Eigen::Vector2d(0.6, 0.8);
  double previous = 2.0;
  for (int k = 0; k <= 50; ++k) {
    const double s = EvalBasis(lat, lat.centers[12] + 0.05 * k * dir)[12];
    EXPECT_LT(s, previous);
    previous = s;
  }
}

TEST(Predict, ZeroWeights) {
  const WeightMatrix w = WeightMatrix::Zero(25, 2);
  EXPECT_TRUE(Predict(w, EvalBasis(DefaultLattice(), {1.3, 2.2})).isZero(0.0));
}

TEST(Predict, SingleEntry) {
  WeightMatrix w = WeightMatrix::Zero(4, 2);
  w(2, 0) = 2.0;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(4);
  s[2] = 0.5;
  const Eigen::Vector2d y = Predict(w, s);
  EXPECT_DOUBLE_EQ(y.x(), 1.0);
  EXPECT_DOUBLE_EQ(y.y(), 0.0);
}

TEST(Predict, MatchesBruteForceSum) {
  const RbfLattice lat = DefaultLattice();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 100; ++k) {
    WeightMatrix w(25, 2);
    for (int i = 0; i < 25; ++i) w.row(i) << n01(rng), n01(rng);
    const Eigen::VectorXd s = EvalBasis(lat, lat.centers[k % 25]);
    double sv = 0.0;
    double sw = 0.0;
    for (int i = 0; i < 25; ++i) {
      sv += w(i, 0) * s[i];
      sw += w(i, 1) * s[i];
    }
    const Eigen::Vector2d y = Predict(w, s);
    EXPECT_NEAR(y.x(), sv, 1e-14 * (1 + std::abs(sv)) + 1e-14);
    EXPECT_NEAR(y.y(), sw, 1e-14 * (1 + std::abs(sw)) + 1e-14);
  }
}

TEST(Predict, LinearInWeights) {
  const RbfLattice lat = DefaultLattice();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 100; ++k) {
    WeightMatrix w1(25, 2);
    WeightMatrix w2(25, 2);
    for (int i = 0; i < 25; ++i) {
      w1.row(i) << n01(rng), n01(rng);
      w2.row(i) << n01(rng), n01(rng);
    }
    const double a = n01(rng);
    const double b = n01(rng);
    const Eigen::VectorXd s = EvalBasis(lat, {2 + n01(rng), 2 + n01(rng)});
    const WeightMatrix combo = a * w1 + b * w2;
    const Eigen::Vector2d lhs = Predict(combo, s);
    const Eigen::Vector2d rhs = a * Predict(w1, s) + b * Predict(w2, s);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(PersistentExcitation, ConstantTrajectoryIsDegenerate) {
  const RbfLattice lat = DefaultLattice();
  const std::vector<Eigen::Vector2d> traj(1000, lat.centers[0]);
  const PeLevel pe = PersistentExcitationLevel(lat, traj, 0.01, 0.1);
  EXPECT_GT(pe.active.size(), 1u);
  EXPECT_FALSE(pe.empty_active);
  EXPECT_LT(pe.lambda_min, 1e-12);
}

TEST(PersistentExcitation, CircleIsExciting) {
  const RbfLattice lat = DefaultLattice();
  constexpr double kTwoPi = 2 * std::numbers::pi;
  const auto one = Circle({2, 2}, 1.0, 0.0, kTwoPi, 0.001);
  const PeLevel pe = PersistentExcitationLevel(lat, one, 0.001, 0.1);
  EXPECT_GT(pe.lambda_min, 0.0);
  EXPECT_GE(pe.active.size(), 9u);

  const auto two = Circle({2, 2}, 1.0, 0.0, 2 * kTwoPi, 0.001);
  const double doubled = PersistentExcitationLevel(lat, two, 0.001, 0.1).lambda_min;
  EXPECT_NEAR(doubled / pe.lambda_min, 1.0, 0.01);

  const auto shifted = Circle({2, 2}, 1.0, 1.234, 1.234 + kTwoPi, 0.001);
  const double sh = PersistentExcitationLevel(lat, shifted, 0.001, 0.1).lambda_min;
  EXPECT_NEAR(sh / pe.lambda_min, 1.0, 0.01);
}

TEST(PersistentExcitation, FarAwayHasNoActiveNodes) {
  const RbfLattice lat = DefaultLattice();
  const std::vector<Eigen::Vector2d> traj(10, Eigen::Vector2d(40, 40));
  const PeLevel pe = PersistentExcitationLevel(lat, traj, 0.01, 0.1);
  EXPECT_TRUE(pe.empty_active);
  EXPECT_EQ(pe.lambda_min, 0.0);
}

TEST(PersistentExcitation, RejectsEmptyTrajectory) {
  EXPECT_THROW(PersistentExcitationLevel(DefaultLattice(), {}, 0.01, 0.1),
               std::invalid_argument);
}

}  // namespace
}  // namespace cdl
