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

#include "cdl/fleet.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cdl/model.h"

namespace cdl {
namespace {

FleetConfig ShortFleet(double t_end) {
  FleetConfig cfg = RingFleetConfig();
  cfg.sim.t_end = t_end;
  cfg.sim.consolidation_window = std::array<double, 2>{0.5 * t_end, t_end};
  return cfg;
}

void ExpectRecordsIdentical(const RunLog& a, const RunLog& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  for (size_t k = 0; k < a.records.size(); ++k) {
    const AgentRecord& ra = a.records[k];
    const AgentRecord& rb = b.records[k];
    ASSERT_EQ(ra.t, rb.t);
    ASSERT_EQ(ra.agent, rb.agent);
    ASSERT_EQ(ra.q.x, rb.q.x);
    ASSERT_EQ(ra.q.y, rb.q.y);
    ASSERT_EQ(ra.q.theta, rb.q.theta);
    ASSERT_EQ(ra.u_hat.v, rb.u_hat.v);
    ASSERT_EQ(ra.tau.tau_v, rb.tau.tau_v);
    ASSERT_EQ(ra.tau.tau_w, rb.tau.tau_w);
    ASSERT_EQ(ra.est_err, rb.est_err);
  }
  ASSERT_EQ(a.final_state.size(), b.final_state.size());
  for (size_t i = 0; i < a.final_state.size(); ++i) {
    ASSERT_EQ(a.final_state[i].weights, b.final_state[i].weights);
  }
}

TEST(Fleet, RunsAreDeterministic) {
  const FleetConfig cfg = ShortFleet(2.0);
  ExpectRecordsIdentical(RunLearning(cfg), RunLearning(cfg));
}

TEST(Fleet, AgentEvaluationOrderDoesNotMatter) {
  const FleetConfig cfg = ShortFleet(2.0);
  const RunLog forward = RunLearning(cfg);
  RunOptions opts;
  opts.agent_order = {3, 1, 0, 2};
  ExpectRecordsIdentical(forward, RunLearning(cfg, opts));
  opts.agent_order = {3, 2, 1, 0};
  ExpectRecordsIdentical(forward, RunLearning(cfg, opts));
}

TEST(Fleet, RejectsBadAgentOrder) {
  RunOptions opts;
  opts.agent_order = {0, 1, 1, 2};
  EXPECT_THROW(RunLearning(ShortFleet(0.1), opts), std::invalid_argument);
}

TEST(Fleet, ZeroDurationLogsInitialState) {
  const FleetConfig cfg = ShortFleet(0.0);
  const RunLog log = RunLearning(cfg);
  ASSERT_EQ(log.records.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(log.records[i].t, 0.0);
    EXPECT_EQ(log.records[i].agent, i);
    EXPECT_EQ(log.records[i].q.x, 0.0);
    EXPECT_EQ(log.records[i].u.v, 0.0);
    EXPECT_TRUE(log.final_state[i].weights.isZero());
  }
}

TEST(Fleet, LogCadenceAndLayout) {
  const FleetConfig cfg = ShortFleet(1.0);
  const RunLog log = RunLearning(cfg);
  // One row per agent at t = 0, 0.01, ..., 1.0.
  ASSERT_EQ(log.records.size(), 4u * 101u);
  for (size_t k = 0; k < log.records.size(); ++k) {
    EXPECT_EQ(log.records[k].agent, static_cast<int>(k % 4));
    EXPECT_NEAR(log.records[k].t, 0.01 * static_cast<double>(k / 4), 1e-12);
  }
  ASSERT_EQ(log.snapshots.size(), 4u);
  EXPECT_EQ(log.snapshots[0].size(), 11u);
  EXPECT_NEAR(log.snapshots[0].back().t, 1.0, 1e-12);
  EXPECT_EQ(log.AgentRecords(2).size(), 101u);
}

TEST(Fleet, NoLateralSlipAtLoggedSteps) {
  const RunLog log = RunLearning(ShortFleet(3.0));
  for (const AgentRecord& r : log.records) {
    const Eigen::Vector3d rate = Kinematics(r.q, r.u);
    EXPECT_LT(std::abs(ConstraintResidual(r.q, rate)), 1e-9);
  }
}

TEST(Fleet, NonFiniteStartRaisesDivergence) {
  const FleetConfig cfg = ShortFleet(1.0);
  RunOptions opts;
  opts.initial = DefaultInitialState(cfg);
  (*opts.initial)[2].u.v = std::numeric_limits<double>::quiet_NaN();
  try {
    RunLearning(cfg, opts);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.agent(), 2);
    EXPECT_EQ(e.t(), 0.0);
  }
}

TEST(Fleet, UnstableStepRaisesDivergence) {
  // A step far above the observer time scale makes the explicit scheme blow
  // up within a few steps.
  FleetConfig cfg = ShortFleet(5.0);
  cfg.sim.dt = 0.05;
  cfg.sim.log_interval = 0.05;
  cfg.sim.snapshot_interval = 0.05;
  try {
    RunLearning(cfg);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.t(), 0.0);
    EXPECT_LE(e.t(), 5.0);
  }
}

TEST(Fleet, WithoutCouplingAgentsLearnIndependently) {
  FleetConfig fleet = ShortFleet(2.0);
  fleet.controller.beta = 0.0;
  const RunLog together = RunLearning(fleet);

  for (int i = 0; i < 4; ++i) {
    FleetConfig solo = fleet;
    solo.references = {fleet.references[i]};
    solo.graph = CycleGraph(1);
    const RunLog alone = RunLearning(solo);
    EXPECT_EQ(alone.final_state[0].weights, together.final_state[i].weights)
        << "agent " << i;
    EXPECT_EQ(alone.final_state[0].q.x, together.final_state[i].q.x);
  }
}

TEST(Fleet, CouplingChangesWeights) {
  FleetConfig cfg = ShortFleet(2.0);
  const RunLog coupled = RunLearning(cfg);
  cfg.controller.beta = 0.0;
  const RunLog uncoupled = RunLearning(cfg);
  EXPECT_GT((coupled.final_state[0].weights - uncoupled.final_state[0].weights)
                .norm(),
            1e-6);
}

TEST(Fleet, ConsolidationAveragesSnapshots) {
  const FleetConfig cfg = ShortFleet(2.0);
  const RunLog log = RunLearning(cfg);
  const auto wbar = ConsolidateRun(cfg, log);
  ASSERT_EQ(wbar.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(wbar[i], ConsolidateWeights(log.snapshots[i], 1.0, 2.0));
  }
}

TEST(Fleet, ExperienceKeepsWeightsFixed) {
  const FleetConfig cfg = ShortFleet(2.0);
  const RunLog learn = RunLearning(cfg);
  const auto wbar = ConsolidateRun(cfg, learn);
  const RunLog exp = RunExperience(cfg, wbar, {0, 1, 2, 3});
  EXPECT_EQ(exp.assignment, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(exp.snapshots.empty() ||
              std::all_of(exp.snapshots.begin(), exp.snapshots.end(),
                          [](const auto& s) { return s.empty(); }));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(exp.final_state[i].weights, wbar[i]);
  EXPECT_EQ(exp.records.size(), learn.records.size());
}

TEST(Fleet, ExperienceAssignmentPicksReference) {
  const FleetConfig cfg = ShortFleet(0.0);
  std::vector<WeightMatrix> zero(4, WeightMatrix::Zero(25, 2));
  const RunLog exp = RunExperience(cfg, zero, {2, 0, 1, 3});
  // Agent 0 follows the third ellipse, which starts at (0, 3).
  EXPECT_NEAR(exp.records[0].x_r, 0.0, 1e-12);
  EXPECT_NEAR(exp.records[0].y_r, 3.0, 1e-12);
  EXPECT_NEAR(exp.records[1].y_r, 2.0, 1e-12);
}

TEST(Fleet, ExperienceRejectsBadInput) {
  const FleetConfig cfg = ShortFleet(0.1);
  std::vector<WeightMatrix> zero(4, WeightMatrix::Zero(25, 2));
  EXPECT_THROW(RunExperience(cfg, zero, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(RunExperience(cfg, zero, {0, 1, 2, 2}), std::invalid_argument);
  EXPECT_THROW(RunExperience(cfg, zero, {0, 1, 2, 4}), std::invalid_argument);
  zero.pop_back();
  EXPECT_THROW(RunExperience(cfg, zero, {0, 1, 2, 3}), std::invalid_argument);
  std::vector<WeightMatrix> small(4, WeightMatrix::Zero(9, 2));
  EXPECT_THROW(RunExperience(cfg, small, {0, 1, 2, 3}), std::invalid_argument);
}

TEST(Fleet, IsPermutation) {
  EXPECT_TRUE(IsPermutation({2, 0, 1}, 3));
  EXPECT_FALSE(IsPermutation({0, 0, 1}, 3));
  EXPECT_FALSE(IsPermutation({0, 1}, 3));
  EXPECT_FALSE(IsPermutation({-1, 0, 1}, 3));
}

}  // namespace
}  // namespace cdl
