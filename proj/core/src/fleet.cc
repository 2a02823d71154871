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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cdl/integrator.h"
#include "cdl/reference.h"

namespace cdl {
namespace {

constexpr int kPlantDim = 9;  // x y theta v omega | theta_hat omega_hat px_hat v_hat
constexpr double kDivergenceBound = 1e6;

enum class Mode { kLearning, kExperience };

class FleetSim {
 public:
  FleetSim(const FleetConfig& cfg, Mode mode,
           std::vector<WeightMatrix> consolidated, std::vector<int> assignment,
           const RunOptions& opts)
      : cfg_(cfg),
        mode_(mode),
        lattice_(cfg.rbf.Lattice()),
        n_(cfg.n()),
        nodes_(lattice_.size()),
        stride_(kPlantDim + (mode == Mode::kLearning ? 2 * nodes_ : 0)),
        inertia_(ReducedInertia(cfg.vehicle)),
        consolidated_(std::move(consolidated)),
        assignment_(std::move(assignment)),
        order_(opts.agent_order) {
    if (order_.empty()) {
      order_.resize(n_);
      std::iota(order_.begin(), order_.end(), 0);
    }
    if (!IsPermutation(order_, n_)) {
      throw std::invalid_argument("agent_order must be a permutation");
    }
    for (int k = 0; k < n_; ++k) {
      references_.emplace_back(cfg.references[assignment_[k]]);
    }
    neighbors_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i != j && cfg.graph.adjacency(i, j) != 0.0) {
          neighbors_[i].push_back(j);
        }
      }
    }
  }

  Eigen::VectorXd Pack(const std::vector<AgentState>& agents) const {
    Eigen::VectorXd x(stride_ * n_);
    for (int i = 0; i < n_; ++i) {
      const AgentState& a = agents[i];
      auto seg = x.segment(i * stride_, stride_);
      seg.head<kPlantDim>() << a.q.x, a.q.y, a.q.theta, a.u.v, a.u.omega,
          a.obs.theta_hat, a.obs.omega_hat, a.obs.px_hat, a.obs.v_hat;
      if (mode_ == Mode::kLearning) {
        if (a.weights.rows() != nodes_) {
          throw std::invalid_argument("initial weights do not match lattice");
        }
        seg.tail(2 * nodes_) =
            Eigen::Map<const Eigen::VectorXd>(a.weights.data(), 2 * nodes_);
      }
    }
    return x;
  }

  AgentState Unpack(const Eigen::VectorXd& x, int i) const {
    const auto seg = x.segment(i * stride_, stride_);
    AgentState a;
    a.q = {seg[0], seg[1], seg[2]};
    a.u = {seg[3], seg[4]};
    a.obs = {seg[5], seg[6], seg[7], seg[8]};
    if (mode_ == Mode::kLearning) {
      a.weights = Weights(x, i);
    } else {
      a.weights = consolidated_[i];
    }
    return a;
  }

  WeightMatrix Weights(const Eigen::VectorXd& x, int i) const {
    return Eigen::Map<const WeightMatrix>(
        x.data() + i * stride_ + kPlantDim, nodes_, 2);
  }

  // Fleet rate. Every agent reads the same state x (bulk-synchronous), so the
  // order of evaluation does not affect the result.
  Eigen::VectorXd Rate(double t, const Eigen::VectorXd& x,
                       std::vector<AgentRecord>* records) const {
    std::vector<WeightMatrix> weights(n_);
    for (int i = 0; i < n_; ++i) {
      weights[i] = mode_ == Mode::kLearning ? Weights(x, i) : consolidated_[i];
    }
    Eigen::VectorXd dx(x.size());
    if (records) records->assign(n_, AgentRecord{});
    for (int i : order_) {
      AgentRate(t, x, i, weights, dx, records ? &(*records)[i] : nullptr);
    }
    return dx;
  }

  void AgentRate(double t, const Eigen::VectorXd& x, int i,
                 const std::vector<WeightMatrix>& weights, Eigen::VectorXd& dx,
                 AgentRecord* record) const {
    const auto seg = x.segment(i * stride_, stride_);
    const GeneralCoordinates q{seg[0], seg[1], seg[2]};
    const BodyVelocity u{seg[3], seg[4]};
    const ObserverState obs{seg[5], seg[6], seg[7], seg[8]};
    const ControllerGains& g = cfg_.controller;

    const ReferenceSample ref = references_[i].Eval(t);
    const TrackingError e = ComputeTrackingError(q, ref);
    const BodyVelocity u_hat = Estimate(obs);
    const Eigen::Vector2d udot_c = VirtualVelocityRate(e, ref, u_hat, g);
    const Eigen::VectorXd basis = EvalBasis(lattice_, u_hat.AsVector());
    const TorqueCommand cmd =
        mode_ == Mode::kLearning
            ? AdaptiveTorque(e, ref, u_hat, udot_c, inertia_, weights[i],
                             basis, g)
            : ExperienceTorque(e, ref, u_hat, udot_c, inertia_, weights[i],
                               basis, g);

    auto out = dx.segment(i * stride_, stride_);
    out.head<3>() = Kinematics(q, u);
    out.segment<2>(3) = BodyAccel(cfg_.vehicle, u, cmd.tau);
    out.segment<4>(5) =
        ObserverRates(obs, cfg_.observer, q.theta, RotatingFrame(q));

    const BodyVelocity u_c = VirtualVelocity(e, ref, g);
    if (mode_ == Mode::kLearning) {
      std::vector<NeighborWeights> nb;
      nb.reserve(neighbors_[i].size());
      for (int j : neighbors_[i]) {
        nb.push_back({cfg_.graph.adjacency(i, j), &weights[j]});
      }
      const Eigen::Vector2d u_tilde_hat = u_c.AsVector() - u_hat.AsVector();
      const WeightMatrix wdot =
          WeightUpdateRate(basis, u_tilde_hat, weights[i], nb, g);
      out.tail(2 * nodes_) =
          Eigen::Map<const Eigen::VectorXd>(wdot.data(), 2 * nodes_);
    }

    if (record) {
      record->t = t;
      record->agent = i;
      record->q = q;
      record->u = u;
      record->u_hat = u_hat;
      record->x_r = ref.x_r;
      record->y_r = ref.y_r;
      record->theta_r = ref.theta_r;
      record->e = e;
      record->tau = cmd.tau;
      record->saturated = cmd.saturated;
      record->est_err = UnknownDynamics(cfg_.vehicle, u) -
                        Predict(weights[i], EvalBasis(lattice_, u.AsVector()));
      record->v_diag =
          LyapunovValue(e, u_c.AsVector() - u.AsVector(), 0.0, g, inertia_);
    }
  }

  void CheckFinite(const Eigen::VectorXd& x, double t) const {
    for (int i = 0; i < n_; ++i) {
      const auto seg = x.segment(i * stride_, stride_);
      for (int k = 0; k < stride_; ++k) {
        if (!std::isfinite(seg[k]) || std::abs(seg[k]) > kDivergenceBound) {
          std::ostringstream msg;
          msg << "state diverged at t=" << t << " s (agent " << i + 1
              << ", component " << k << " = " << seg[k] << ")";
          throw DivergenceError(t, i, msg.str());
        }
      }
    }
  }

  RunLog Run(const std::vector<AgentState>& initial) const {
    const SimConfig& sim = cfg_.sim;
    RunLog log;
    log.n = n_;
    log.dt = sim.dt;
    log.t_end = sim.t_end;
    log.assignment = assignment_;
    if (mode_ == Mode::kLearning) log.snapshots.resize(n_);

    const long long steps = std::llround(sim.t_end / sim.dt);
    const long long log_every =
        std::max(1LL, std::llround(sim.log_interval / sim.dt));
    const long long snap_every =
        std::max(1LL, std::llround(sim.snapshot_interval / sim.dt));

    Eigen::VectorXd x = Pack(initial);
    CheckFinite(x, 0.0);
    const auto rate = [this](double t, const Eigen::VectorXd& s) {
      return Rate(t, s, nullptr);
    };
    std::vector<AgentRecord> rows;
    for (long long k = 0;; ++k) {
      const double t = static_cast<double>(k) * sim.dt;
      const bool last = k == steps;
      const bool record = k % log_every == 0 || last;
      const Eigen::VectorXd k1 = Rate(t, x, record ? &rows : nullptr);
      if (record) log.records.insert(log.records.end(), rows.begin(), rows.end());
      if (mode_ == Mode::kLearning && (k % snap_every == 0 || last)) {
        for (int i = 0; i < n_; ++i) {
          log.snapshots[i].push_back({t, Weights(x, i)});
        }
      }
      if (last) break;
      x = Rk4StepWithFirstStage(rate, x, k1, t, sim.dt);
      CheckFinite(x, static_cast<double>(k + 1) * sim.dt);
    }
    for (int i = 0; i < n_; ++i) log.final_state.push_back(Unpack(x, i));
    return log;
  }

 private:
  const FleetConfig& cfg_;
  Mode mode_;
  RbfLattice lattice_;
  int n_;
  int nodes_;
  int stride_;
  Eigen::Matrix2d inertia_;
  std::vector<WeightMatrix> consolidated_;
  std::vector<int> assignment_;
  std::vector<int> order_;
  std::vector<Reference> references_;
  std::vector<std::vector<int>> neighbors_;
};

void RequireRunnable(const FleetConfig& cfg) {
  if (cfg.n() == 0) throw std::invalid_argument("fleet has no agents");
  if (cfg.graph.n() != cfg.n()) {
    throw std::invalid_argument("graph size does not match agent count");
  }
  if (!(cfg.sim.dt > 0.0) || !(cfg.sim.t_end >= 0.0)) {
    throw std::invalid_argument("sim.dt must be > 0 and sim.t_end >= 0");
  }
}

}  // namespace

std::vector<AgentRecord> RunLog::AgentRecords(int agent) const {
  std::vector<AgentRecord> out;
  out.reserve(records.size() / std::max(n, 1));
  for (const AgentRecord& r : records) {
    if (r.agent == agent) out.push_back(r);
  }
  return out;
}

DivergenceError::DivergenceError(double t, int agent, const std::string& what)
    : std::runtime_error(what), t_(t), agent_(agent) {}

bool IsPermutation(const std::vector<int>& assignment, int n) {
  if (static_cast<int>(assignment.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int a : assignment) {
    if (a < 0 || a >= n || seen[a]) return false;
    seen[a] = true;
  }
  return true;
}

std::vector<AgentState> DefaultInitialState(const FleetConfig& cfg) {
  const int nodes = cfg.rbf.nodes[0] * cfg.rbf.nodes[1];
  std::vector<AgentState> out(cfg.n());
  for (AgentState& a : out) {
    a.obs = InitialObserverState(a.q);
    a.weights = WeightMatrix::Zero(nodes, 2);
  }
  return out;
}

RunLog RunLearning(const FleetConfig& cfg, const RunOptions& opts) {
  RequireRunnable(cfg);
  std::vector<int> identity(cfg.n());
  std::iota(identity.begin(), identity.end(), 0);
  const FleetSim sim(cfg, Mode::kLearning, {}, identity, opts);
  return sim.Run(opts.initial.value_or(DefaultInitialState(cfg)));
}

RunLog RunExperience(const FleetConfig& cfg,
                     const std::vector<WeightMatrix>& consolidated,
                     const std::vector<int>& assignment,
                     const RunOptions& opts) {
  RequireRunnable(cfg);
  if (!IsPermutation(assignment, cfg.n())) {
    throw std::invalid_argument("assignment must be a permutation of agents");
  }
  const int nodes = cfg.rbf.nodes[0] * cfg.rbf.nodes[1];
  if (static_cast<int>(consolidated.size()) != cfg.n()) {
    throw std::invalid_argument("need one consolidated weight set per agent");
  }
  for (const WeightMatrix& w : consolidated) {
    if (w.rows() != nodes) {
      throw std::invalid_argument("consolidated weights do not match lattice");
    }
  }
  const FleetSim sim(cfg, Mode::kExperience, consolidated, assignment, opts);
  return sim.Run(opts.initial.value_or(DefaultInitialState(cfg)));
}

std::vector<WeightMatrix> ConsolidateRun(const FleetConfig& cfg,
                                         const RunLog& log) {
  const auto window = cfg.sim.ConsolidationWindow();
  std::vector<WeightMatrix> out;
  for (const auto& history : log.snapshots) {
    out.push_back(ConsolidateWeights(history, window[0], window[1]));
  }
  return out;
}

}  // namespace cdl
