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

#include <cstdlib>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "cdl/config.h"
#include "test_util.h"

namespace cdl {
namespace {

namespace fs = std::filesystem;
using testing_util::ReadFile;
using testing_util::TempDir;
using testing_util::WriteFile;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cdl_sim");
  std::ostringstream out, err;
  Result r;
  r.code = cli::Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path WriteShortConfig(const fs::path& dir, double t_end,
                          FleetConfig cfg = RingFleetConfig()) {
  cfg.sim.t_end = t_end;
  cfg.sim.consolidation_window = std::array<double, 2>{0.5 * t_end, t_end};
  cfg.sim.output_dir = (dir / "cfg_out").string();
  const fs::path path = dir / "cfg.yaml";
  WriteFile(path, SerializeConfig(cfg));
  return path;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) {
    ::setenv(name, value.c_str(), 1);
  }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

TEST(Cli, ValidateShippedConfig) {
  const std::string cfg =
      (testing_util::SourceDir() / "configs" / "ring_fleet.yaml").string();
  Result r = Invoke({"validate", "--config", cfg});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  r = Invoke({"validate", "--config", cfg, "--mode", "experience"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, ValidateReportsViolations) {
  TempDir dir;
  FleetConfig cfg = RingFleetConfig();
  cfg.sim.dt = 0.01;
  cfg.sim.log_interval = 0.01;
  const fs::path path = WriteShortConfig(dir.path(), 1.0, cfg);
  const Result r = Invoke({"validate", "--config", path.string()});
  EXPECT_EQ(r.code, cli::kValidationFailure);
  EXPECT_NE((r.out + r.err).find("sim.dt_over_delta"), std::string::npos)
      << r.out << r.err;
}

TEST(Cli, ParseErrorsAreValidationFailures) {
  TempDir dir;
  WriteFile(dir.path() / "bad.yaml", "controller:\n  kq: 1\n");
  Result r = Invoke({"validate", "--config", (dir.path() / "bad.yaml").string()});
  EXPECT_EQ(r.code, cli::kValidationFailure);
  EXPECT_NE(r.err.find("bad.yaml:2:"), std::string::npos) << r.err;

  r = Invoke({"frobnicate"});
  EXPECT_EQ(r.code, cli::kValidationFailure);
  r = Invoke({"validate"});
  EXPECT_EQ(r.code, cli::kValidationFailure);
}

TEST(Cli, MissingConfigIsIoError) {
  const Result r = Invoke({"validate", "--config", "/nonexistent/x.yaml"});
  EXPECT_EQ(r.code, cli::kIoError) << r.err;
}

TEST(Cli, LearnReplayExport) {
  TempDir dir;
  const fs::path cfg = WriteShortConfig(dir.path(), 2.0);
  const fs::path run = dir.path() / "run";
  Result r = Invoke({"learn", "--config", cfg.string(), "--out", run.string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(fs::exists(run / "run_log.csv"));
  EXPECT_TRUE(fs::exists(run / "config.yaml"));
  EXPECT_TRUE(fs::exists(run / "metrics.txt"));
  for (int i = 1; i <= 4; ++i) {
    EXPECT_TRUE(fs::exists(run / ("wbar_agent" + std::to_string(i) + ".csv")));
  }
  EXPECT_TRUE(fs::exists(run / "weights" / "weights_agent1_t0.csv"));
  EXPECT_TRUE(fs::exists(run / "weights" / "weights_agent4_t2000.csv"));
  // The written config reloads to the same scenario.
  EXPECT_EQ(SerializeConfig(LoadConfig(run / "config.yaml")),
            SerializeConfig(LoadConfig(cfg)));

  r = Invoke({"replay", "--config", cfg.string(), "--weights", run.string(),
              "--assignment", "3,1,2,4"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const fs::path replay = dir.path() / "cfg_out" / "replay";
  EXPECT_TRUE(fs::exists(replay / "run_log.csv"));
  EXPECT_NE(ReadFile(replay / "metrics.txt").find("reference_agent1=3"),
            std::string::npos);

  r = Invoke({"export", run.string(), "--what", "all"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  for (const char* name : {"tracking_agent1.svg", "observer_agent4.svg",
                           "estimation_agent2.svg", "weights_v.svg",
                           "trajectory2d.svg", "trajectory2d.csv"}) {
    EXPECT_TRUE(fs::exists(run / "plots" / name)) << name;
  }
  const std::string svg = ReadFile(run / "plots" / "trajectory2d.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);

  r = Invoke({"export", replay.string(), "--what", "tracking", "--out",
              (dir.path() / "p").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "p" / "tracking_agent3.svg"));
}

TEST(Cli, ReplayRejectsBadInput) {
  TempDir dir;
  const fs::path cfg = WriteShortConfig(dir.path(), 0.5);
  const fs::path run = dir.path() / "run";
  ASSERT_EQ(Invoke({"learn", "--config", cfg.string(), "--out", run.string()}).code, 0);

  Result r = Invoke({"replay", "--config", cfg.string(), "--weights",
                     run.string(), "--assignment", "1,1,2,3"});
  EXPECT_EQ(r.code, cli::kValidationFailure);
  r = Invoke({"replay", "--config", cfg.string(), "--weights",
              (dir.path() / "nothing").string()});
  EXPECT_EQ(r.code, cli::kIoError);

  // Corrupt one value in the weights file: the error names the column.
  std::string text = ReadFile(run / "wbar_agent2.csv");
  const size_t line2 = text.find('\n', text.find('\n') + 1) + 1;
  const size_t last_comma = text.rfind(',', text.find('\n', line2));
  text.replace(last_comma + 1, text.find('\n', line2) - last_comma - 1, "oops");
  WriteFile(run / "wbar_agent2.csv", text);
  r = Invoke({"replay", "--config", cfg.string(), "--weights", run.string()});
  EXPECT_EQ(r.code, cli::kValidationFailure);
  EXPECT_NE(r.err.find("w_omega"), std::string::npos) << r.err;
}

TEST(Cli, ExportNeedsRunDirectory) {
  TempDir dir;
  Result r = Invoke({"export", dir.path().string(), "--what", "tracking"});
  EXPECT_EQ(r.code, cli::kIoError);
  r = Invoke({"export", dir.path().string(), "--what", "nonsense"});
  EXPECT_EQ(r.code, cli::kValidationFailure);
}

TEST(Cli, OutputDirFromEnvironment) {
  TempDir dir;
  const fs::path cfg = WriteShortConfig(dir.path(), 0.2);
  ScopedEnv env("OUTPUT_DIR", (dir.path() / "env_out").string());
  const Result r = Invoke({"learn", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "env_out" / "run_log.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "cfg_out"));
}

TEST(Cli, ZeroDurationRun) {
  TempDir dir;
  FleetConfig cfg = RingFleetConfig();
  cfg.sim.t_end = 0.0;
  cfg.sim.consolidation_window.reset();
  cfg.sim.output_dir = (dir.path() / "zero").string();
  WriteFile(dir.path() / "cfg.yaml", SerializeConfig(cfg));
  const Result r =
      Invoke({"learn", "--config", (dir.path() / "cfg.yaml").string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const std::string log = ReadFile(dir.path() / "zero" / "run_log.csv");
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 5);
}

TEST(Cli, DivergenceExitCode) {
  TempDir dir;
  FleetConfig cfg = RingFleetConfig();
  cfg.controller.ku = 1e5;
  cfg.controller.tau_max = 1e12;
  const fs::path path = WriteShortConfig(dir.path(), 5.0, cfg);
  const Result r = Invoke({"learn", "--config", path.string()});
  EXPECT_EQ(r.code, cli::kDivergence) << r.out << r.err;
  EXPECT_NE(r.err.find("agent"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace cdl
