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

#include "cdl/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cdl/model.h"
#include "cdl/reference.h"

namespace cdl {
namespace {

// Small slack so windows like "t >= 20" include the sample logged at 20.
bool InWindow(double t, double t_from) { return t >= t_from - 1e-9; }

std::string Fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string AgentKey(const std::string& name, int agent0) {
  return name + "_agent" + std::to_string(agent0 + 1);
}

WeightMatrix Mean(std::span<const WeightMatrix> ws) {
  WeightMatrix sum = WeightMatrix::Zero(ws.front().rows(), 2);
  for (const WeightMatrix& w : ws) sum += w;
  return sum / static_cast<double>(ws.size());
}

double LastTime(std::span<const AgentRecord> records) {
  return records.empty() ? 0.0 : records.back().t;
}

}  // namespace

std::vector<Eigen::Vector2d> MaxObserverError(
    std::span<const AgentRecord> records, int n, double t_from) {
  std::vector<Eigen::Vector2d> out(n, Eigen::Vector2d::Zero());
  for (const AgentRecord& r : records) {
    if (!InWindow(r.t, t_from)) continue;
    Eigen::Vector2d& m = out[r.agent];
    m.x() = std::max(m.x(), std::abs(r.u.v - r.u_hat.v));
    m.y() = std::max(m.y(), std::abs(r.u.omega - r.u_hat.omega));
  }
  return out;
}

std::vector<TrackingMetric> TrackingMetrics(std::span<const AgentRecord> records,
                                            int n, double t_from) {
  std::vector<TrackingMetric> out(n);
  std::vector<int> count(n, 0);
  for (const AgentRecord& r : records) {
    if (!InWindow(r.t, t_from)) continue;
    TrackingMetric& m = out[r.agent];
    const double pos = std::hypot(r.e.ex, r.e.ey);
    m.max_pos = std::max(m.max_pos, pos);
    m.max_theta = std::max(m.max_theta, std::abs(r.e.etheta));
    m.rms_pos += pos * pos;
    ++count[r.agent];
  }
  for (int i = 0; i < n; ++i) {
    if (count[i] > 0) out[i].rms_pos = std::sqrt(out[i].rms_pos / count[i]);
  }
  return out;
}

Eigen::Vector2d EstimationMetric::Relative() const {
  Eigen::Vector2d rel;
  for (int c = 0; c < 2; ++c) rel[c] = rms_h[c] > 0.0 ? rms_err[c] / rms_h[c] : 0.0;
  return rel;
}

std::vector<EstimationMetric> EstimationMetrics(
    std::span<const AgentRecord> records, int n, const VehicleParams& params,
    double t_from) {
  std::vector<EstimationMetric> out(n);
  std::vector<int> count(n, 0);
  for (const AgentRecord& r : records) {
    if (!InWindow(r.t, t_from)) continue;
    const Eigen::Vector2d h = UnknownDynamics(params, r.u);
    out[r.agent].rms_err += r.est_err.cwiseAbs2();
    out[r.agent].rms_h += h.cwiseAbs2();
    ++count[r.agent];
  }
  for (int i = 0; i < n; ++i) {
    if (count[i] == 0) continue;
    out[i].rms_err = (out[i].rms_err / count[i]).cwiseSqrt();
    out[i].rms_h = (out[i].rms_h / count[i]).cwiseSqrt();
  }
  return out;
}

EstimationMetric EvaluateEstimation(const VehicleParams& params,
                                    const RbfLattice& lattice,
                                    const WeightMatrix& weights,
                                    std::span<const Eigen::Vector2d> xs) {
  EstimationMetric m;
  if (xs.empty()) return m;
  for (const Eigen::Vector2d& x : xs) {
    const Eigen::Vector2d h = UnknownDynamics(params, BodyVelocity::FromVector(x));
    const Eigen::Vector2d err = h - Predict(weights, EvalBasis(lattice, x));
    m.rms_err += err.cwiseAbs2();
    m.rms_h += h.cwiseAbs2();
  }
  const double count = static_cast<double>(xs.size());
  m.rms_err = (m.rms_err / count).cwiseSqrt();
  m.rms_h = (m.rms_h / count).cwiseSqrt();
  return m;
}

double ConsensusDiameter(std::span<const WeightMatrix> weights) {
  double diameter = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    for (size_t j = i + 1; j < weights.size(); ++j) {
      diameter = std::max(diameter, (weights[i] - weights[j]).norm());
    }
  }
  return diameter;
}

std::vector<Eigen::Vector2d> VelocityTrajectory(
    std::span<const AgentRecord> records, int agent, double t_from) {
  std::vector<Eigen::Vector2d> out;
  for (const AgentRecord& r : records) {
    if (r.agent == agent && InWindow(r.t, t_from)) out.push_back(r.u.AsVector());
  }
  return out;
}

std::vector<Eigen::Vector2d> EstimatedVelocityTrajectory(
    std::span<const AgentRecord> records, int agent, double t_from) {
  std::vector<Eigen::Vector2d> out;
  for (const AgentRecord& r : records) {
    if (r.agent == agent && InWindow(r.t, t_from)) {
      out.push_back(r.u_hat.AsVector());
    }
  }
  return out;
}

double FleetLyapunov(std::span<const AgentRecord> records, double t) {
  if (records.empty()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const AgentRecord& r : records) best = std::min(best, std::abs(r.t - t));
  double sum = 0.0;
  for (const AgentRecord& r : records) {
    if (std::abs(r.t - t) == best) sum += r.v_diag;
  }
  return sum;
}

bool LyapunovFinite(std::span<const AgentRecord> records) {
  return std::all_of(records.begin(), records.end(),
                     [](const AgentRecord& r) { return std::isfinite(r.v_diag); });
}

std::vector<CheckResult> CheckLearning(
    const FleetConfig& cfg, std::span<const AgentRecord> records,
    std::span<const WeightMatrix> final_weights,
    std::span<const WeightMatrix> consolidated) {
  const int n = cfg.n();
  const double t_end = LastTime(records);
  std::vector<CheckResult> out;

  {
    const auto err = MaxObserverError(records, n, 0.5);
    double worst = 0.0;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      worst = std::max({worst, err[i].x(), err[i].y()});
      detail += "agent " + std::to_string(i + 1) + ": |v-v_hat|=" +
                Fmt(err[i].x()) + " |w-w_hat|=" + Fmt(err[i].y()) + "; ";
    }
    out.push_back({"observer_error", worst < 0.01,
                   detail + "bound 0.01 for t > 0.5 s"});
  }
  {
    const auto track = TrackingMetrics(records, n, t_end - 5.0);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      ok = ok && track[i].max_pos < 0.05 && track[i].max_theta < 0.05;
      detail += "agent " + std::to_string(i + 1) + ": pos=" +
                Fmt(track[i].max_pos) + " theta=" + Fmt(track[i].max_theta) +
                "; ";
    }
    out.push_back({"tracking", ok, detail + "bound 0.05 over trailing 5 s"});
  }
  {
    const double diameter = ConsensusDiameter(final_weights);
    const double bound = 0.05 * (1.0 + Mean(consolidated).norm());
    out.push_back({"consensus", diameter < bound,
                   "diameter=" + Fmt(diameter) + " bound=" + Fmt(bound)});
  }
  {
    const auto est = EstimationMetrics(records, n, cfg.vehicle, t_end - 10.0);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d rel = est[i].Relative();
      ok = ok && rel.maxCoeff() < 0.10;
      detail += "agent " + std::to_string(i + 1) + ": v=" + Fmt(rel.x()) +
                " w=" + Fmt(rel.y()) + "; ";
    }
    out.push_back({"estimation", ok,
                   detail + "relative RMS bound 0.10 over trailing 10 s"});
  }
  if (n >= 3) {
    const RbfLattice lattice = cfg.rbf.Lattice();
    const auto xs = VelocityTrajectory(records, 2, t_end - 10.0);
    const Eigen::Vector2d rel =
        EvaluateEstimation(cfg.vehicle, lattice, consolidated[0], xs).Relative();
    out.push_back({"cross_trajectory", rel.maxCoeff() < 0.15,
                   "agent 1 weights on agent 3 trajectory: v=" + Fmt(rel.x()) +
                       " w=" + Fmt(rel.y()) + "; bound 0.15"});
  }
  {
    const RbfLattice lattice = cfg.rbf.Lattice();
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      const double period = ReferencePeriod(cfg.references[i]);
      const auto xs = EstimatedVelocityTrajectory(records, i, t_end - period);
      const PeLevel pe = PersistentExcitationLevel(
          lattice, xs, cfg.sim.log_interval, cfg.rbf.activation_threshold);
      ok = ok && pe.lambda_min > 0.0 && !pe.empty_active;
      detail += "agent " + std::to_string(i + 1) +
                ": lambda_min=" + Fmt(pe.lambda_min) + " (" +
                std::to_string(pe.active.size()) + " active); ";
    }
    out.push_back({"persistent_excitation", ok, detail});
  }
  {
    const double v1 = FleetLyapunov(records, 1.0);
    const double v_end = FleetLyapunov(records, t_end);
    const bool finite = LyapunovFinite(records);
    out.push_back({"lyapunov_decrease", finite && v_end < v1,
                   "V(1)=" + Fmt(v1) + " V(end)=" + Fmt(v_end) +
                       (finite ? "" : " (non-finite values logged)")});
  }
  return out;
}

std::vector<CheckResult> CheckExperience(const FleetConfig& cfg,
                                         std::span<const AgentRecord> records) {
  const int n = cfg.n();
  const auto track = TrackingMetrics(records, n, LastTime(records) - 5.0);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < n; ++i) {
    ok = ok && track[i].max_pos < 0.05;
    detail += "agent " + std::to_string(i + 1) + ": pos=" +
              Fmt(track[i].max_pos) + "; ";
  }
  return {{"experience_tracking", ok, detail + "bound 0.05 over trailing 5 s"}};
}

MetricList LearningSummary(const FleetConfig& cfg,
                           std::span<const AgentRecord> records,
                           std::span<const WeightMatrix> final_weights,
                           std::span<const WeightMatrix> consolidated) {
  const int n = cfg.n();
  const double t_end = LastTime(records);
  const double t_from = t_end * (1.0 - cfg.sim.metrics_window_fraction);
  MetricList out = ExperienceSummary(cfg, records);
  const auto est = EstimationMetrics(records, n, cfg.vehicle, t_from);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d rel = est[i].Relative();
    out.emplace_back(AgentKey("est_rel_rms_v", i), rel.x());
    out.emplace_back(AgentKey("est_rel_rms_w", i), rel.y());
  }
  out.emplace_back("consensus_diameter", ConsensusDiameter(final_weights));
  for (int i = 0; i < n; ++i) {
    out.emplace_back(AgentKey("wbar_norm", i), consolidated[i].norm());
  }
  const RbfLattice lattice = cfg.rbf.Lattice();
  for (int i = 0; i < n; ++i) {
    const double period = ReferencePeriod(cfg.references[i]);
    const auto xs = EstimatedVelocityTrajectory(records, i, t_end - period);
    if (xs.empty()) continue;
    const PeLevel pe = PersistentExcitationLevel(
        lattice, xs, cfg.sim.log_interval, cfg.rbf.activation_threshold);
    out.emplace_back(AgentKey("pe_lambda_min", i), pe.lambda_min);
  }
  return out;
}

MetricList ExperienceSummary(const FleetConfig& cfg,
                             std::span<const AgentRecord> records) {
  const int n = cfg.n();
  const double t_end = LastTime(records);
  const double t_from = t_end * (1.0 - cfg.sim.metrics_window_fraction);
  MetricList out;
  out.emplace_back("t_end", t_end);
  out.emplace_back("window_start", t_from);
  const auto obs = MaxObserverError(records, n, std::min(0.5, t_end));
  for (int i = 0; i < n; ++i) {
    out.emplace_back(AgentKey("obs_err_v_max", i), obs[i].x());
    out.emplace_back(AgentKey("obs_err_w_max", i), obs[i].y());
  }
  const auto track = TrackingMetrics(records, n, t_from);
  for (int i = 0; i < n; ++i) {
    out.emplace_back(AgentKey("track_pos_max", i), track[i].max_pos);
    out.emplace_back(AgentKey("track_pos_rms", i), track[i].rms_pos);
    out.emplace_back(AgentKey("track_theta_max", i), track[i].max_theta);
  }
  size_t saturated = 0;
  for (const AgentRecord& r : records) saturated += r.saturated ? 1 : 0;
  out.emplace_back("saturated_fraction",
                   records.empty() ? 0.0
                                   : static_cast<double>(saturated) /
                                         static_cast<double>(records.size()));
  out.emplace_back("lyapunov_t1", FleetLyapunov(records, 1.0));
  out.emplace_back("lyapunov_end", FleetLyapunov(records, t_end));
  return out;
}

void WriteMetrics(const std::filesystem::path& path, const MetricList& metrics) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[64];
  for (const auto& [name, value] : metrics) {
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    out << name << '=' << buf << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

MetricList ReadMetrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  MetricList out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.empty() || eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), std::stod(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace cdl
