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

#ifndef CDL_METRICS_H_
#define CDL_METRICS_H_

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cdl/config.h"
#include "cdl/fleet.h"
#include "cdl/rbf.h"

namespace cdl {

// All metrics below take the flat record list of a run (time-major, as
// produced by the engine or read back from a run log CSV) and only use rows
// with t >= t_from.

// Per agent max |v - v_hat| and |omega - omega_hat|.
std::vector<Eigen::Vector2d> MaxObserverError(
    std::span<const AgentRecord> records, int n, double t_from);

struct TrackingMetric {
  double max_pos = 0.0;    // max sqrt(ex^2 + ey^2)
  double max_theta = 0.0;  // max |etheta|
  double rms_pos = 0.0;
};

std::vector<TrackingMetric> TrackingMetrics(std::span<const AgentRecord> records,
                                            int n, double t_from);

struct EstimationMetric {
  Eigen::Vector2d rms_err = Eigen::Vector2d::Zero();  // per channel
  Eigen::Vector2d rms_h = Eigen::Vector2d::Zero();    // RMS of H itself

  // rms_err / rms_h per channel (0 where H vanishes).
  Eigen::Vector2d Relative() const;
};

// RMS of the logged H(u) - W^T S(u) per agent and channel. H is recomputed
// from the logged ground-truth velocity.
std::vector<EstimationMetric> EstimationMetrics(
    std::span<const AgentRecord> records, int n, const VehicleParams& params,
    double t_from);

// RMS of H(X) - W^T S(X) for constant weights along the samples `xs`.
EstimationMetric EvaluateEstimation(const VehicleParams& params,
                                    const RbfLattice& lattice,
                                    const WeightMatrix& weights,
                                    std::span<const Eigen::Vector2d> xs);

// max_{i,j} ||W_i - W_j||_F.
double ConsensusDiameter(std::span<const WeightMatrix> weights);

// Ground-truth (v, omega) samples of one agent with t >= t_from.
std::vector<Eigen::Vector2d> VelocityTrajectory(
    std::span<const AgentRecord> records, int agent, double t_from);

// Observer-estimated (v_hat, omega_hat) samples, the regressor input.
std::vector<Eigen::Vector2d> EstimatedVelocityTrajectory(
    std::span<const AgentRecord> records, int agent, double t_from);

// Sum of the per-agent Lyapunov diagnostics at the record time nearest t.
double FleetLyapunov(std::span<const AgentRecord> records, double t);

// True iff every logged Lyapunov diagnostic is finite.
bool LyapunovFinite(std::span<const AgentRecord> records);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Acceptance checks for a learning run of the ring scenario: observer error,
// tracking, consensus, estimation, cross-trajectory generalization,
// excitation and the Lyapunov decrease.
std::vector<CheckResult> CheckLearning(const FleetConfig& cfg,
                                       std::span<const AgentRecord> records,
                                       std::span<const WeightMatrix> final_weights,
                                       std::span<const WeightMatrix> consolidated);

// Tracking acceptance for an experience run.
std::vector<CheckResult> CheckExperience(const FleetConfig& cfg,
                                         std::span<const AgentRecord> records);

using MetricList = std::vector<std::pair<std::string, double>>;

// Summary metrics over the default trailing window.
MetricList LearningSummary(const FleetConfig& cfg,
                           std::span<const AgentRecord> records,
                           std::span<const WeightMatrix> final_weights,
                           std::span<const WeightMatrix> consolidated);

MetricList ExperienceSummary(const FleetConfig& cfg,
                             std::span<const AgentRecord> records);

// `name=value` per line.
void WriteMetrics(const std::filesystem::path& path, const MetricList& metrics);

MetricList ReadMetrics(const std::filesystem::path& path);

}  // namespace cdl

#endif  // CDL_METRICS_H_
