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

#include "cli.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "cdl/config.h"
#include "cdl/fleet.h"
#include "cdl/metrics.h"
#include "cdl/run_io.h"
#include "cdl/svg_plot.h"
#include "cdl/weights_io.h"

namespace cdl::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for missing or unwritable files; maps to kIoError.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for invalid user input; maps to kValidationFailure.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out;
  std::string weights;
  std::string assignment;
  std::string what;
  std::string run_dir;
  std::string mode = "learning";
  bool check = false;
};

FleetConfig Load(const std::string& path) {
  if (!fs::exists(path)) throw IoError("config file not found: " + path);
  try {
    return LoadConfig(path);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

bool PrintReport(const ValidationReport& report, std::ostream& out) {
  for (const ValidationIssue& issue : report.issues) {
    out << (issue.severity == ValidationIssue::Severity::kError ? "error"
                                                                : "warning")
        << " [" << issue.code << "] " << issue.message << '\n';
  }
  return report.ok();
}

fs::path ResolveOut(const Options& o, const FleetConfig& cfg,
                    const std::string& subdir) {
  if (!o.out.empty()) return o.out;
  fs::path base = cfg.sim.output_dir;
  if (const char* env = std::getenv("OUTPUT_DIR"); env != nullptr && *env) {
    base = env;
  }
  return subdir.empty() ? base : base / subdir;
}

void MakeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string());
  }
}

std::vector<int> ParseAssignment(const std::string& text, int n) {
  std::vector<int> out;
  if (text.empty()) {
    out.resize(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v - 1);
    } catch (const std::exception&) {
      throw UsageError("--assignment entry '" + item + "' is not an integer");
    }
  }
  if (!IsPermutation(out, n)) {
    throw UsageError("--assignment must be a permutation of 1.." +
                     std::to_string(n) + ", got '" + text + "'");
  }
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) throw IoError("cannot write " + path.string());
}

int ReportChecks(const std::vector<CheckResult>& checks, const fs::path& dir,
                 std::ostream& out) {
  std::string text;
  bool all = true;
  for (const CheckResult& c : checks) {
    text += std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " +
            c.detail + "\n";
    all = all && c.passed;
  }
  out << text;
  WriteText(dir / "check.txt", text);
  return all ? kOk : kValidationFailure;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

int CmdValidate(const Options& o, std::ostream& out) {
  const FleetConfig cfg = Load(o.config);
  const RunMode mode =
      o.mode == "experience" ? RunMode::kExperience : RunMode::kLearning;
  const bool ok = PrintReport(ValidateConfig(cfg, mode), out);
  out << o.config << ": " << (ok ? "ok" : "invalid") << " (" << cfg.n()
      << " agents)\n";
  return ok ? kOk : kValidationFailure;
}

int CmdLearn(const Options& o, std::ostream& out) {
  const FleetConfig cfg = Load(o.config);
  if (!PrintReport(ValidateConfig(cfg, RunMode::kLearning), out)) {
    return kValidationFailure;
  }
  const fs::path dir = ResolveOut(o, cfg, "");
  MakeDirs(dir / "weights");

  const auto start = std::chrono::steady_clock::now();
  const RunLog log = RunLearning(cfg);
  const double runtime = Seconds(start);

  std::vector<WeightMatrix> final_weights;
  for (const AgentState& a : log.final_state) final_weights.push_back(a.weights);
  const auto window = cfg.sim.ConsolidationWindow();
  const std::vector<WeightMatrix> wbar =
      window[1] > window[0] ? ConsolidateRun(cfg, log) : final_weights;

  const RbfLattice lattice = cfg.rbf.Lattice();
  WriteRunLogCsv(dir / "run_log.csv", log.records);
  for (int i = 0; i < log.n; ++i) {
    for (const WeightSnapshot& s : log.snapshots[i]) {
      WriteWeightsCsv(dir / "weights" / SnapshotFileName(i, s.t), lattice,
                      s.weights);
    }
    WriteWeightsCsv(dir / ConsolidatedFileName(i), lattice, wbar[i]);
  }
  WriteText(dir / "config.yaml", SerializeConfig(cfg));
  MetricList metrics = LearningSummary(cfg, log.records, final_weights, wbar);
  metrics.emplace_back("runtime_s", runtime);
  WriteMetrics(dir / "metrics.txt", metrics);

  char line[160];
  std::snprintf(line, sizeof(line),
                "learn: %d agents, t_end=%g s, %zu records, %.2f s wall\n",
                log.n, log.t_end, log.records.size(), runtime);
  out << line << "wrote " << dir.string() << '\n';
  if (!o.check) return kOk;
  return ReportChecks(CheckLearning(cfg, log.records, final_weights, wbar), dir,
                      out);
}

int CmdReplay(const Options& o, std::ostream& out) {
  const FleetConfig cfg = Load(o.config);
  if (!PrintReport(ValidateConfig(cfg, RunMode::kExperience), out)) {
    return kValidationFailure;
  }
  const std::vector<int> assignment = ParseAssignment(o.assignment, cfg.n());
  const RbfLattice lattice = cfg.rbf.Lattice();
  std::vector<WeightMatrix> wbar;
  for (int i = 0; i < cfg.n(); ++i) {
    const fs::path path = fs::path(o.weights) / ConsolidatedFileName(i);
    if (!fs::exists(path)) {
      throw IoError("missing consolidated weights " + path.string());
    }
    wbar.push_back(ReadWeightsCsv(path, lattice));
  }
  const fs::path dir = ResolveOut(o, cfg, "replay");
  MakeDirs(dir);

  const auto start = std::chrono::steady_clock::now();
  const RunLog log = RunExperience(cfg, wbar, assignment);
  const double runtime = Seconds(start);

  WriteRunLogCsv(dir / "run_log.csv", log.records);
  WriteText(dir / "config.yaml", SerializeConfig(cfg));
  MetricList metrics = ExperienceSummary(cfg, log.records);
  for (int i = 0; i < cfg.n(); ++i) {
    metrics.emplace_back("reference_agent" + std::to_string(i + 1),
                         assignment[i] + 1);
  }
  metrics.emplace_back("runtime_s", runtime);
  WriteMetrics(dir / "metrics.txt", metrics);

  out << "replay: assignment";
  for (int a : assignment) out << ' ' << a + 1;
  out << ", " << log.records.size() << " records\nwrote " << dir.string()
      << '\n';
  if (!o.check) return kOk;
  return ReportChecks(CheckExperience(cfg, log.records), dir, out);
}

// ---- export ---------------------------------------------------------------

void WriteSlice(const fs::path& path, const std::string& header,
                const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f << header << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.9g", row[k]);
      f << (k ? "," : "") << buf;
    }
    f << '\n';
  }
}

using Field = double (*)(const AgentRecord&);

struct Channel {
  const char* name;
  Field get;
};

// Writes one time-series plot per agent plus the combined CSV slice.
void ExportPerAgent(const std::vector<AgentRecord>& records, int n,
                    const fs::path& dir, const std::string& what,
                    const std::string& y_label,
                    const std::vector<Channel>& channels) {
  std::string header = "t,agent";
  for (const Channel& c : channels) header += std::string(",") + c.name;
  std::vector<std::vector<double>> rows;
  for (const AgentRecord& r : records) {
    std::vector<double> row = {r.t, static_cast<double>(r.agent + 1)};
    for (const Channel& c : channels) row.push_back(c.get(r));
    rows.push_back(std::move(row));
  }
  WriteSlice(dir / (what + ".csv"), header, rows);
  for (int i = 0; i < n; ++i) {
    PlotSpec spec;
    spec.title = what + ", agent " + std::to_string(i + 1);
    spec.x_label = "t [s]";
    spec.y_label = y_label;
    for (const Channel& c : channels) {
      PlotSeries s;
      s.label = c.name;
      for (const AgentRecord& r : records) {
        if (r.agent != i) continue;
        s.x.push_back(r.t);
        s.y.push_back(c.get(r));
      }
      spec.series.push_back(std::move(s));
    }
    WriteSvg(dir / (what + "_agent" + std::to_string(i + 1) + ".svg"), spec);
  }
}

void ExportTrajectory(const std::vector<AgentRecord>& records, int n,
                      const fs::path& dir) {
  std::vector<std::vector<double>> rows;
  for (const AgentRecord& r : records) {
    rows.push_back({r.t, static_cast<double>(r.agent + 1), r.q.x, r.q.y,
                    r.x_r, r.y_r});
  }
  WriteSlice(dir / "trajectory2d.csv", "t,agent,x,y,x_r,y_r", rows);
  PlotSpec spec;
  spec.title = "paths (solid) and references (dashed)";
  spec.x_label = "x [m]";
  spec.y_label = "y [m]";
  spec.equal_aspect = true;
  for (int i = 0; i < n; ++i) {
    PlotSeries actual;
    PlotSeries ref;
    actual.label = "agent " + std::to_string(i + 1);
    ref.label = "ref " + std::to_string(i + 1);
    ref.dashed = true;
    for (const AgentRecord& r : records) {
      if (r.agent != i) continue;
      actual.x.push_back(r.q.x);
      actual.y.push_back(r.q.y);
      ref.x.push_back(r.x_r);
      ref.y.push_back(r.y_r);
    }
    spec.series.push_back(std::move(actual));
    spec.series.push_back(std::move(ref));
  }
  WriteSvg(dir / "trajectory2d.svg", spec);
}

void ExportWeights(const fs::path& run_dir, const fs::path& dir) {
  const fs::path cfg_path = run_dir / "config.yaml";
  const fs::path weights_dir = run_dir / "weights";
  if (!fs::exists(cfg_path) || !fs::is_directory(weights_dir)) {
    throw IoError("weights export needs " + cfg_path.string() + " and " +
                  weights_dir.string() + " from a learn run");
  }
  const RbfLattice lattice = Load(cfg_path.string()).rbf.Lattice();
  static const std::regex kName(R"(weights_agent(\d+)_t(\d+)\.csv)");
  // agent -> time -> per-channel 1-norm
  std::map<int, std::map<long long, Eigen::Vector2d>> norms;
  for (const auto& entry : fs::directory_iterator(weights_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, kName)) continue;
    const WeightMatrix w = ReadWeightsCsv(entry.path(), lattice);
    norms[std::stoi(m[1])][std::stoll(m[2])] =
        w.cwiseAbs().colwise().sum().transpose();
  }
  if (norms.empty()) throw IoError("no weight snapshots in " + weights_dir.string());
  std::vector<std::vector<double>> rows;
  PlotSpec pv{"weight 1-norm, v channel", "t [s]", "sum |w_v|", {}, false};
  PlotSpec pw{"weight 1-norm, omega channel", "t [s]", "sum |w_omega|", {}, false};
  for (const auto& [agent, series] : norms) {
    PlotSeries sv{"agent " + std::to_string(agent), {}, {}, false};
    PlotSeries sw = sv;
    for (const auto& [millis, nrm] : series) {
      const double t = static_cast<double>(millis) / 1000.0;
      rows.push_back({t, static_cast<double>(agent), nrm.x(), nrm.y()});
      sv.x.push_back(t);
      sv.y.push_back(nrm.x());
      sw.x.push_back(t);
      sw.y.push_back(nrm.y());
    }
    pv.series.push_back(std::move(sv));
    pw.series.push_back(std::move(sw));
  }
  WriteSlice(dir / "weights.csv", "t,agent,norm1_v,norm1_omega", rows);
  WriteSvg(dir / "weights_v.svg", pv);
  WriteSvg(dir / "weights_omega.svg", pw);
}

int CmdExport(const Options& o, std::ostream& out) {
  const fs::path run_dir = o.run_dir;
  const fs::path log_path = run_dir / "run_log.csv";
  if (!fs::exists(log_path)) {
    throw IoError("no run_log.csv in '" + run_dir.string() + "'");
  }
  const fs::path dir = o.out.empty() ? run_dir / "plots" : fs::path(o.out);
  MakeDirs(dir);
  const std::vector<AgentRecord> records = ReadRunLogCsv(log_path);
  if (records.empty()) throw IoError(log_path.string() + " has no records");
  int n = 0;
  for (const AgentRecord& r : records) n = std::max(n, r.agent + 1);

  const std::vector<std::string> whats =
      o.what == "all" ? std::vector<std::string>{"tracking", "observer",
                                                 "estimation", "trajectory2d",
                                                 "weights"}
                      : std::vector<std::string>{o.what};
  for (const std::string& what : whats) {
    if (what == "tracking") {
      ExportPerAgent(records, n, dir, what, "tracking error",
                     {{"ex", [](const AgentRecord& r) { return r.e.ex; }},
                      {"ey", [](const AgentRecord& r) { return r.e.ey; }},
                      {"etheta", [](const AgentRecord& r) { return r.e.etheta; }}});
    } else if (what == "observer") {
      ExportPerAgent(
          records, n, dir, what, "estimation error",
          {{"v_err", [](const AgentRecord& r) { return r.u.v - r.u_hat.v; }},
           {"omega_err",
            [](const AgentRecord& r) { return r.u.omega - r.u_hat.omega; }}});
    } else if (what == "estimation") {
      ExportPerAgent(
          records, n, dir, what, "H - W^T S",
          {{"est_err_v", [](const AgentRecord& r) { return r.est_err.x(); }},
           {"est_err_w", [](const AgentRecord& r) { return r.est_err.y(); }}});
    } else if (what == "trajectory2d") {
      ExportTrajectory(records, n, dir);
    } else if (what == "weights") {
      ExportWeights(run_dir, dir);
    }
    out << "exported " << what << " to " << dir.string() << '\n';
  }
  return kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cooperative deterministic-learning fleet simulator", "cdl_sim"};
  app.require_subcommand(1);
  Options o;

  CLI::App* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("--config", o.config, "Fleet config (YAML)")->required();
  validate->add_option("--mode", o.mode, "learning or experience")
      ->check(CLI::IsMember({"learning", "experience"}));

  CLI::App* learn = app.add_subcommand("learn", "Run cooperative learning");
  learn->add_option("--config", o.config, "Fleet config (YAML)")->required();
  learn->add_option("--out", o.out, "Output directory");
  learn->add_flag("--check", o.check, "Evaluate acceptance thresholds");

  CLI::App* replay =
      app.add_subcommand("replay", "Run experience-based control");
  replay->add_option("--config", o.config, "Fleet config (YAML)")->required();
  replay->add_option("--weights", o.weights, "Directory with wbar_agent<i>.csv")
      ->required();
  replay->add_option("--assignment", o.assignment,
                     "Reference followed by each agent, e.g. 3,1,2,4");
  replay->add_option("--out", o.out, "Output directory");
  replay->add_flag("--check", o.check, "Evaluate acceptance thresholds");

  CLI::App* exporter = app.add_subcommand("export", "Render plots of a run");
  exporter->add_option("run_dir", o.run_dir, "Directory of a learn/replay run")
      ->required();
  exporter->add_option("--what", o.what, "What to render")
      ->required()
      ->check(CLI::IsMember(
          {"tracking", "observer", "weights", "estimation", "trajectory2d", "all"}));
  exporter->add_option("--out", o.out, "Plot directory (default run_dir/plots)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationFailure;
  }

  try {
    if (validate->parsed()) return CmdValidate(o, out);
    if (learn->parsed()) return CmdLearn(o, out);
    if (replay->parsed()) return CmdReplay(o, out);
    return CmdExport(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const WeightsFormatError& e) {
    err << "weights error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const RunLogFormatError& e) {
    err << "run log error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << '\n';
    return kDivergence;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::runtime_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace cdl::cli
