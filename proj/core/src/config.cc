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

#include "cdl/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace cdl {
namespace {

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Node& node, const std::string& what) const {
    const YAML::Mark mark = node.Mark();
    const int line = mark.line >= 0 ? mark.line + 1 : 0;
    const int col = mark.column >= 0 ? mark.column + 1 : 0;
    throw ConfigError(source_, line, col, what);
  }

  void RequireMap(const YAML::Node& node, const std::string& where) const {
    if (!node.IsMap()) Fail(node, "'" + where + "' must be a mapping");
  }

  void CheckKeys(const YAML::Node& node, const std::string& where,
                 std::initializer_list<const char*> allowed) const {
    RequireMap(node, where);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!ok.count(key)) {
        Fail(kv.first, "unknown key '" + key + "' in '" + where + "'");
      }
    }
  }

  double Number(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) Fail(node, "'" + name + "' must be a number");
    const std::string text = node.Scalar();
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(node, "'" + name + "' must be a number, got '" + text + "'");
    }
    return value;
  }

  void ReadNumber(const YAML::Node& parent, const char* key,
                  const std::string& where, double& out) const {
    const YAML::Node node = parent[key];
    if (node) out = Number(node, where + "." + key);
  }

  int Integer(const YAML::Node& node, const std::string& name) const {
    const double v = Number(node, name);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      Fail(node, "'" + name + "' must be an integer");
    }
    return static_cast<int>(v);
  }

  std::vector<double> NumberList(const YAML::Node& node,
                                 const std::string& name) const {
    if (!node.IsSequence()) Fail(node, "'" + name + "' must be a list");
    std::vector<double> out;
    for (size_t i = 0; i < node.size(); ++i) {
      out.push_back(Number(node[i], name + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::string String(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) Fail(node, "'" + name + "' must be a string");
    return node.Scalar();
  }

  std::array<double, 2> Pair(const YAML::Node& node,
                             const std::string& name) const {
    const auto v = NumberList(node, name);
    if (v.size() != 2) Fail(node, "'" + name + "' must have 2 entries");
    return {v[0], v[1]};
  }

  void ParseVehicle(const YAML::Node& n, VehicleParams& p) const {
    CheckKeys(n, "vehicle",
              {"mass", "inertia", "half_track", "wheel_radius", "com_offset",
               "friction"});
    ReadNumber(n, "mass", "vehicle", p.mass);
    ReadNumber(n, "inertia", "vehicle", p.inertia_c);
    ReadNumber(n, "half_track", "vehicle", p.half_track);
    ReadNumber(n, "wheel_radius", "vehicle", p.wheel_radius);
    ReadNumber(n, "com_offset", "vehicle", p.com_offset);
    if (const YAML::Node f = n["friction"]) {
      CheckKeys(f, "vehicle.friction", {"cv1", "cv2", "cw1", "cw2"});
      ReadNumber(f, "cv1", "vehicle.friction", p.friction.cv1);
      ReadNumber(f, "cv2", "vehicle.friction", p.friction.cv2);
      ReadNumber(f, "cw1", "vehicle.friction", p.friction.cw1);
      ReadNumber(f, "cw2", "vehicle.friction", p.friction.cw2);
    }
  }

  void ParseObserver(const YAML::Node& n, ObserverGains& g) const {
    CheckKeys(n, "observer", {"l1", "l2", "delta"});
    ReadNumber(n, "l1", "observer", g.l1);
    ReadNumber(n, "l2", "observer", g.l2);
    ReadNumber(n, "delta", "observer", g.delta);
  }

  void ParseController(const YAML::Node& n, ControllerGains& g) const {
    CheckKeys(n, "controller",
              {"kx", "ky", "ktheta", "ku", "gamma_big", "gamma_small", "beta",
               "tau_max"});
    ReadNumber(n, "kx", "controller", g.kx);
    ReadNumber(n, "ky", "controller", g.ky);
    ReadNumber(n, "ktheta", "controller", g.ktheta);
    ReadNumber(n, "ku", "controller", g.ku);
    ReadNumber(n, "gamma_big", "controller", g.gamma_big);
    ReadNumber(n, "gamma_small", "controller", g.gamma_small);
    ReadNumber(n, "beta", "controller", g.beta);
    ReadNumber(n, "tau_max", "controller", g.tau_max);
  }

  void ParseRbf(const YAML::Node& n, RbfConfig& r) const {
    CheckKeys(n, "rbf",
              {"box_min", "box_max", "nodes", "width", "activation_threshold"});
    if (n["box_min"]) {
      const auto v = Pair(n["box_min"], "rbf.box_min");
      r.box_min = {v[0], v[1]};
    }
    if (n["box_max"]) {
      const auto v = Pair(n["box_max"], "rbf.box_max");
      r.box_max = {v[0], v[1]};
    }
    if (const YAML::Node nodes = n["nodes"]) {
      if (!nodes.IsSequence() || nodes.size() != 2) {
        Fail(nodes, "'rbf.nodes' must be a list of 2 integers");
      }
      r.nodes = {Integer(nodes[0], "rbf.nodes[0]"),
                 Integer(nodes[1], "rbf.nodes[1]")};
    }
    ReadNumber(n, "width", "rbf", r.width);
    ReadNumber(n, "activation_threshold", "rbf", r.activation_threshold);
  }

  void ParseGraph(const YAML::Node& n, int agents, FleetConfig& cfg) const {
    CheckKeys(n, "graph", {"preset", "adjacency"});
    const YAML::Node preset = n["preset"];
    const YAML::Node adjacency = n["adjacency"];
    if (preset && adjacency) {
      Fail(n, "'graph' takes either 'preset' or 'adjacency', not both");
    }
    if (preset) {
      cfg.graph_preset = String(preset, "graph.preset");
      try {
        cfg.graph = GraphPreset(cfg.graph_preset, std::max(agents, 1));
      } catch (const std::invalid_argument& e) {
        Fail(preset, e.what());
      }
      return;
    }
    if (!adjacency) Fail(n, "'graph' needs 'preset' or 'adjacency'");
    if (!adjacency.IsSequence()) {
      Fail(adjacency, "'graph.adjacency' must be a list of rows");
    }
    const int rows = static_cast<int>(adjacency.size());
    cfg.graph_preset.clear();
    cfg.graph.adjacency = Eigen::MatrixXd::Zero(rows, rows);
    for (int i = 0; i < rows; ++i) {
      const auto row = NumberList(adjacency[i],
                                  "graph.adjacency[" + std::to_string(i) + "]");
      if (static_cast<int>(row.size()) != rows) {
        Fail(adjacency[i], "'graph.adjacency' must be square (row " +
                               std::to_string(i + 1) + " has " +
                               std::to_string(row.size()) + " entries)");
      }
      for (int j = 0; j < rows; ++j) cfg.graph.adjacency(i, j) = row[j];
    }
  }

  ReferenceSpec ParseReference(const YAML::Node& n, int index) const {
    const std::string where = "references[" + std::to_string(index) + "]";
    CheckKeys(n, where,
              {"kind", "amp_x", "amp_y", "phase", "period", "x", "y"});
    ReferenceSpec spec;
    const std::string kind =
        n["kind"] ? String(n["kind"], where + ".kind") : "lissajous-ellipse";
    if (kind == "lissajous-ellipse") {
      spec.kind = ReferenceSpec::Kind::kLissajousEllipse;
      if (!n["amp_x"] || !n["amp_y"]) {
        Fail(n, "'" + where + "' needs amp_x and amp_y");
      }
      spec.amp_x = Number(n["amp_x"], where + ".amp_x");
      spec.amp_y = Number(n["amp_y"], where + ".amp_y");
      const std::string phase =
          n["phase"] ? String(n["phase"], where + ".phase") : "sin-first";
      if (phase == "sin-first") {
        spec.phase = ReferenceSpec::Phase::kSinFirst;
      } else if (phase == "cos-first") {
        spec.phase = ReferenceSpec::Phase::kCosFirst;
      } else {
        Fail(n["phase"], "'" + where +
                             ".phase' must be sin-first or cos-first, got '" +
                             phase + "'");
      }
      for (const char* k : {"period", "x", "y"}) {
        if (n[k]) Fail(n[k], std::string("'") + k + "' is only valid for "
                                                    "custom-samples");
      }
    } else if (kind == "custom-samples") {
      spec.kind = ReferenceSpec::Kind::kCustomSamples;
      if (!n["period"] || !n["x"] || !n["y"]) {
        Fail(n, "'" + where + "' needs period, x and y");
      }
      spec.period = Number(n["period"], where + ".period");
      spec.x_samples = NumberList(n["x"], where + ".x");
      spec.y_samples = NumberList(n["y"], where + ".y");
    } else {
      Fail(n["kind"], "'" + where + ".kind' must be lissajous-ellipse or "
                                    "custom-samples, got '" + kind + "'");
    }
    return spec;
  }

  void ParseSim(const YAML::Node& n, SimConfig& s) const {
    CheckKeys(n, "sim",
              {"dt", "t_end", "snapshot_interval", "log_interval",
               "consolidation_window", "metrics_window_fraction",
               "output_dir"});
    ReadNumber(n, "dt", "sim", s.dt);
    ReadNumber(n, "t_end", "sim", s.t_end);
    ReadNumber(n, "snapshot_interval", "sim", s.snapshot_interval);
    ReadNumber(n, "log_interval", "sim", s.log_interval);
    if (n["consolidation_window"]) {
      s.consolidation_window =
          Pair(n["consolidation_window"], "sim.consolidation_window");
    }
    ReadNumber(n, "metrics_window_fraction", "sim", s.metrics_window_fraction);
    if (n["output_dir"]) s.output_dir = String(n["output_dir"], "sim.output_dir");
  }

  FleetConfig Parse(const YAML::Node& root) const {
    if (!root || root.IsNull()) {
      throw ConfigError(source_, 0, 0, "empty configuration");
    }
    CheckKeys(root, "<root>",
              {"vehicle", "observer", "controller", "rbf", "graph",
               "references", "sim"});
    FleetConfig cfg;
    if (root["vehicle"]) ParseVehicle(root["vehicle"], cfg.vehicle);
    if (root["observer"]) ParseObserver(root["observer"], cfg.observer);
    if (root["controller"]) ParseController(root["controller"], cfg.controller);
    if (root["rbf"]) ParseRbf(root["rbf"], cfg.rbf);
    const YAML::Node refs = root["references"];
    if (!refs) Fail(root, "missing required key 'references'");
    if (!refs.IsSequence() || refs.size() == 0) {
      Fail(refs, "'references' must be a nonempty list");
    }
    for (size_t i = 0; i < refs.size(); ++i) {
      cfg.references.push_back(ParseReference(refs[i], static_cast<int>(i)));
    }
    if (root["graph"]) {
      ParseGraph(root["graph"], cfg.n(), cfg);
    } else {
      cfg.graph_preset = "cycle";
      cfg.graph = CycleGraph(cfg.n());
    }
    if (root["sim"]) ParseSim(root["sim"], cfg.sim);
    return cfg;
  }

 private:
  std::string source_;
};

std::string Join(const std::vector<double>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += FormatDouble(values[i]);
  }
  return out + "]";
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, int column,
                         const std::string& what)
    : std::runtime_error(source +
                         (line > 0 ? ":" + std::to_string(line) + ":" +
                                         std::to_string(column)
                                   : std::string()) +
                         ": " + what),
      line_(line),
      column_(column) {}

FleetConfig RingFleetConfig() {
  FleetConfig cfg;
  using Phase = ReferenceSpec::Phase;
  const auto ellipse = [](double ax, double ay, Phase phase) {
    ReferenceSpec s;
    s.kind = ReferenceSpec::Kind::kLissajousEllipse;
    s.amp_x = ax;
    s.amp_y = ay;
    s.phase = phase;
    return s;
  };
  cfg.references = {ellipse(1.0, 2.0, Phase::kSinFirst),
                    ellipse(2.0, 1.0, Phase::kCosFirst),
                    ellipse(2.0, 3.0, Phase::kSinFirst),
                    ellipse(3.0, 2.0, Phase::kCosFirst)};
  cfg.graph_preset = "cycle";
  cfg.graph = CycleGraph(4);
  return cfg;
}

FleetConfig ParseConfig(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  try {
    return Parser(source).Parse(root);
  } catch (const YAML::Exception& e) {
    const int line = e.mark.line >= 0 ? e.mark.line + 1 : 0;
    const int col = e.mark.column >= 0 ? e.mark.column + 1 : 0;
    throw ConfigError(source, line, col, e.msg);
  }
}

FleetConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), path.string());
}

std::string SerializeConfig(const FleetConfig& cfg) {
  std::ostringstream o;
  const auto num = [](double v) { return FormatDouble(v); };
  const VehicleParams& v = cfg.vehicle;
  o << "vehicle:\n"
    << "  mass: " << num(v.mass) << "\n"
    << "  inertia: " << num(v.inertia_c) << "\n"
    << "  half_track: " << num(v.half_track) << "\n"
    << "  wheel_radius: " << num(v.wheel_radius) << "\n"
    << "  com_offset: " << num(v.com_offset) << "\n"
    << "  friction:\n"
    << "    cv1: " << num(v.friction.cv1) << "\n"
    << "    cv2: " << num(v.friction.cv2) << "\n"
    << "    cw1: " << num(v.friction.cw1) << "\n"
    << "    cw2: " << num(v.friction.cw2) << "\n";
  o << "observer:\n"
    << "  l1: " << num(cfg.observer.l1) << "\n"
    << "  l2: " << num(cfg.observer.l2) << "\n"
    << "  delta: " << num(cfg.observer.delta) << "\n";
  const ControllerGains& g = cfg.controller;
  o << "controller:\n"
    << "  kx: " << num(g.kx) << "\n"
    << "  ky: " << num(g.ky) << "\n"
    << "  ktheta: " << num(g.ktheta) << "\n"
    << "  ku: " << num(g.ku) << "\n"
    << "  gamma_big: " << num(g.gamma_big) << "\n"
    << "  gamma_small: " << num(g.gamma_small) << "\n"
    << "  beta: " << num(g.beta) << "\n"
    << "  tau_max: " << num(g.tau_max) << "\n";
  const RbfConfig& r = cfg.rbf;
  o << "rbf:\n"
    << "  box_min: " << Join({r.box_min.x(), r.box_min.y()}) << "\n"
    << "  box_max: " << Join({r.box_max.x(), r.box_max.y()}) << "\n"
    << "  nodes: [" << r.nodes[0] << ", " << r.nodes[1] << "]\n"
    << "  width: " << num(r.width) << "\n"
    << "  activation_threshold: " << num(r.activation_threshold) << "\n";
  o << "graph:\n";
  if (!cfg.graph_preset.empty()) {
    o << "  preset: " << cfg.graph_preset << "\n";
  } else {
    o << "  adjacency:\n";
    for (int i = 0; i < cfg.graph.adjacency.rows(); ++i) {
      std::vector<double> row(cfg.graph.adjacency.cols());
      for (int j = 0; j < cfg.graph.adjacency.cols(); ++j) {
        row[j] = cfg.graph.adjacency(i, j);
      }
      o << "    - " << Join(row) << "\n";
    }
  }
  o << "references:\n";
  for (const ReferenceSpec& s : cfg.references) {
    if (s.kind == ReferenceSpec::Kind::kLissajousEllipse) {
      o << "  - kind: lissajous-ellipse\n"
        << "    amp_x: " << num(s.amp_x) << "\n"
        << "    amp_y: " << num(s.amp_y) << "\n"
        << "    phase: "
        << (s.phase == ReferenceSpec::Phase::kSinFirst ? "sin-first"
                                                       : "cos-first")
        << "\n";
    } else {
      o << "  - kind: custom-samples\n"
        << "    period: " << num(s.period) << "\n"
        << "    x: " << Join(s.x_samples) << "\n"
        << "    y: " << Join(s.y_samples) << "\n";
    }
  }
  const SimConfig& sim = cfg.sim;
  o << "sim:\n"
    << "  dt: " << num(sim.dt) << "\n"
    << "  t_end: " << num(sim.t_end) << "\n"
    << "  snapshot_interval: " << num(sim.snapshot_interval) << "\n"
    << "  log_interval: " << num(sim.log_interval) << "\n";
  if (sim.consolidation_window) {
    o << "  consolidation_window: "
      << Join({(*sim.consolidation_window)[0], (*sim.consolidation_window)[1]})
      << "\n";
  }
  o << "  metrics_window_fraction: " << num(sim.metrics_window_fraction)
    << "\n"
    << "  output_dir: \"" << sim.output_dir << "\"\n";
  return o.str();
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const auto& i) {
    return i.severity == ValidationIssue::Severity::kError;
  });
}

bool ValidationReport::Has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const auto& i) { return i.code == code; });
}

ValidationReport ValidateConfig(const FleetConfig& cfg, RunMode mode) {
  using Severity = ValidationIssue::Severity;
  ValidationReport report;
  const auto error = [&](std::string code, std::string msg) {
    report.issues.push_back({Severity::kError, std::move(code), std::move(msg)});
  };
  const auto warn = [&](std::string code, std::string msg) {
    report.issues.push_back(
        {Severity::kWarning, std::move(code), std::move(msg)});
  };

  for (auto& m : ValidateVehicleParams(cfg.vehicle)) error("vehicle", m);
  for (auto& m : ValidateObserverGains(cfg.observer)) error("observer", m);
  for (auto& m : ValidateControllerGains(cfg.controller)) error("controller", m);

  if (cfg.references.empty()) error("references.empty", "no references given");

  // Graph.
  if (cfg.graph.n() != cfg.n()) {
    error("graph.size", "graph has " + std::to_string(cfg.graph.n()) +
                            " agents but " + std::to_string(cfg.n()) +
                            " references are given");
  } else {
    for (const GraphViolation& v : ValidateGraph(cfg.graph)) {
      if (v.kind == GraphViolation::Kind::kDisconnected) {
        if (mode == RunMode::kLearning) {
          error("graph.disconnected",
                v.message + " (consensus learning requires connectivity)");
        } else {
          warn("graph.disconnected", v.message);
        }
        continue;
      }
      std::string code = "graph";
      switch (v.kind) {
        case GraphViolation::Kind::kAsymmetric: code = "graph.asymmetric"; break;
        case GraphViolation::Kind::kNegativeWeight: code = "graph.negative"; break;
        case GraphViolation::Kind::kSelfLoop: code = "graph.self_loop"; break;
        case GraphViolation::Kind::kNonFinite: code = "graph.non_finite"; break;
        default: break;
      }
      error(code, v.message);
    }
  }

  // Integration settings.
  const SimConfig& sim = cfg.sim;
  if (!(sim.dt > 0.0)) error("sim.dt", "sim.dt must be > 0");
  if (!(sim.t_end >= 0.0)) error("sim.t_end", "sim.t_end must be >= 0");
  if (!(sim.snapshot_interval > 0.0)) {
    error("sim.snapshot_interval", "sim.snapshot_interval must be > 0");
  }
  if (!(sim.log_interval > 0.0)) {
    error("sim.log_interval", "sim.log_interval must be > 0");
  }
  if (sim.dt > 0.0 && cfg.observer.delta > 0.0 &&
      sim.dt > cfg.observer.delta / 10.0 * (1.0 + 1e-12)) {
    error("sim.dt_over_delta",
          "sim.dt = " + FormatDouble(sim.dt) +
              " exceeds observer.delta/10 = " +
              FormatDouble(cfg.observer.delta / 10.0) +
              "; the observer modes are not resolved");
  }
  if (sim.dt > 0.0) {
    for (auto [name, interval] :
         {std::pair{"snapshot_interval", sim.snapshot_interval},
          std::pair{"log_interval", sim.log_interval}}) {
      const double steps = interval / sim.dt;
      if (interval > 0.0 && std::abs(steps - std::round(steps)) > 1e-6) {
        error(std::string("sim.") + name,
              std::string("sim.") + name + " must be a multiple of sim.dt");
      }
    }
  }
  const auto window = sim.ConsolidationWindow();
  if (!(window[1] > window[0]) || window[0] < 0.0 ||
      window[1] > sim.t_end + 1e-9) {
    if (sim.t_end > 0.0) {
      error("sim.consolidation_window",
            "consolidation window must satisfy 0 <= t_a < t_b <= t_end");
    }
  }
  if (!(sim.metrics_window_fraction > 0.0 &&
        sim.metrics_window_fraction <= 1.0)) {
    error("sim.metrics_window_fraction",
          "sim.metrics_window_fraction must be in (0, 1]");
  }

  // RBF lattice and reference coverage.
  bool lattice_ok = true;
  try {
    (void)cfg.rbf.Lattice();
  } catch (const std::invalid_argument& e) {
    error("rbf", e.what());
    lattice_ok = false;
  }
  if (!(cfg.rbf.activation_threshold > 0.0 &&
        cfg.rbf.activation_threshold < 1.0)) {
    error("rbf.activation_threshold",
          "rbf.activation_threshold must be in (0, 1)");
  }
  for (int i = 0; i < cfg.n(); ++i) {
    const std::string who = "references[" + std::to_string(i + 1) + "]";
    const auto problems = ValidateReference(cfg.references[i]);
    for (const auto& m : problems) error("reference", who + ": " + m);
    if (!problems.empty() || !lattice_ok) continue;
    const ReferenceScan scan = ScanReference(cfg.references[i]);
    const Eigen::Vector2d lo(scan.v_min, scan.omega_min);
    const Eigen::Vector2d hi(scan.v_max, scan.omega_max);
    const RbfLattice lattice = cfg.rbf.Lattice();
    const Eigen::Vector2d spacing = lattice.spacing();
    if ((lo.array() < lattice.box_min.array()).any() ||
        (hi.array() > lattice.box_max.array()).any()) {
      error("rbf.coverage",
            who + ": (v_r, omega_r) range [" + FormatDouble(lo.x()) + ", " +
                FormatDouble(hi.x()) + "] x [" + FormatDouble(lo.y()) + ", " +
                FormatDouble(hi.y()) + "] leaves the rbf box");
    } else if (((lo - lattice.box_min).array() < spacing.array()).any() ||
               ((lattice.box_max - hi).array() < spacing.array()).any()) {
      warn("rbf.margin",
           who + ": (v_r, omega_r) range comes within one lattice spacing of "
                 "the rbf box edge");
    }
  }
  return report;
}

}  // namespace cdl
