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

#ifndef CDL_FLEET_H_
#define CDL_FLEET_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdl/config.h"
#include "cdl/control.h"
#include "cdl/model.h"
#include "cdl/observer.h"
#include "cdl/rbf.h"

namespace cdl {

struct AgentState {
  GeneralCoordinates q;
  BodyVelocity u;  // ground truth, never read by the controller
  ObserverState obs;
  WeightMatrix weights;
};

// One logged row. `agent` is 0-based here; files use 1-based numbering.
struct AgentRecord {
  double t = 0.0;
  int agent = 0;
  GeneralCoordinates q;
  BodyVelocity u;
  BodyVelocity u_hat;
  double x_r = 0.0;
  double y_r = 0.0;
  double theta_r = 0.0;
  TrackingError e;
  TransformedTorque tau;
  bool saturated = false;
  Eigen::Vector2d est_err = Eigen::Vector2d::Zero();  // H(u) - W^T S(u)
  double v_diag = 0.0;
};

struct RunLog {
  int n = 0;
  double dt = 0.0;
  double t_end = 0.0;
  std::vector<int> assignment;       // reference index followed by each agent
  std::vector<AgentRecord> records;  // time-major, agents in index order
  // Per agent; empty in experience runs.
  std::vector<std::vector<WeightSnapshot>> snapshots;
  std::vector<AgentState> final_state;

  // Records of one agent in time order.
  std::vector<AgentRecord> AgentRecords(int agent) const;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, int agent, const std::string& what);
  double t() const { return t_; }
  int agent() const { return agent_; }

 private:
  double t_;
  int agent_;
};

struct RunOptions {
  // Order in which agent rates are evaluated inside a stage. Empty means
  // 0..n-1. Results do not depend on it.
  std::vector<int> agent_order;
  // Overrides the default start (origin, at rest, zero weights).
  std::optional<std::vector<AgentState>> initial;
};

// Default initial condition: every vehicle at the origin, at rest, observer
// locked to the measured pose, zero weights.
std::vector<AgentState> DefaultInitialState(const FleetConfig& cfg);

// Cooperative learning run with consensus-coupled weight adaptation.
// Throws DivergenceError on non-finite or runaway state.
RunLog RunLearning(const FleetConfig& cfg, const RunOptions& opts = {});

// Experience run: constant consolidated weights, no adaptation and no
// communication. assignment[i] is the reference index agent i follows.
RunLog RunExperience(const FleetConfig& cfg,
                     const std::vector<WeightMatrix>& consolidated,
                     const std::vector<int>& assignment,
                     const RunOptions& opts = {});

// Time-averaged weights of every agent over the configured window.
std::vector<WeightMatrix> ConsolidateRun(const FleetConfig& cfg,
                                         const RunLog& log);

// Checks that `assignment` is a permutation of 0..n-1.
bool IsPermutation(const std::vector<int>& assignment, int n);

}  // namespace cdl

#endif  // CDL_FLEET_H_
