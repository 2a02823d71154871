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

#ifndef CDL_CONFIG_H_
#define CDL_CONFIG_H_

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdl/control.h"
#include "cdl/graph.h"
#include "cdl/model.h"
#include "cdl/observer.h"
#include "cdl/rbf.h"
#include "cdl/reference.h"

namespace cdl {

struct RbfConfig {
  Eigen::Vector2d box_min{0.0, 0.0};
  Eigen::Vector2d box_max{4.0, 4.0};
  std::array<int, 2> nodes = {5, 5};
  double width = 0.7;
  double activation_threshold = 0.1;

  RbfLattice Lattice() const {
    return BuildLattice(box_min, box_max, nodes, width);
  }
};

struct SimConfig {
  double dt = 1e-3;
  double t_end = 25.0;
  double snapshot_interval = 0.1;
  double log_interval = 0.01;
  // Consolidation window; defaults to [0.6 t_end, t_end] when unset.
  std::optional<std::array<double, 2>> consolidation_window;
  // Trailing fraction of the run used by the default metric windows.
  double metrics_window_fraction = 0.4;
  std::string output_dir = "out";

  std::array<double, 2> ConsolidationWindow() const {
    return consolidation_window.value_or(
        std::array<double, 2>{0.6 * t_end, t_end});
  }
};

// Everything a run depends on. The agent count is references.size().
struct FleetConfig {
  VehicleParams vehicle;
  ObserverGains observer;
  ControllerGains controller;
  RbfConfig rbf;
  std::string graph_preset;  // empty when the adjacency was given explicitly
  FleetGraph graph;
  std::vector<ReferenceSpec> references;
  SimConfig sim;

  int n() const { return static_cast<int>(references.size()); }
};

// The four-vehicle ring scenario with its default gains and ellipse references.
FleetConfig RingFleetConfig();

// Parse failure. line/column are 1-based; 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, int column,
              const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses the YAML key/value tree. Unknown keys are rejected. `source` only
// labels error messages.
FleetConfig ParseConfig(const std::string& text,
                        const std::string& source = "<config>");

// Reads and parses a file. Throws std::runtime_error if it cannot be read and
// ConfigError for malformed content.
FleetConfig LoadConfig(const std::filesystem::path& path);

// Canonical YAML. ParseConfig(SerializeConfig(c)) reproduces c exactly.
std::string SerializeConfig(const FleetConfig& cfg);

enum class RunMode { kLearning, kExperience };

struct ValidationIssue {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string code;  // stable short identifier, e.g. "graph.disconnected"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;
  bool Has(const std::string& code) const;
};

// Checks every cross-field invariant: parameter ranges, graph validity
// (disconnection is an error for learning and a warning for experience),
// dt <= delta/10, positive reference speed, and RBF box coverage of every
// reference's (v_r, omega_r) range.
ValidationReport ValidateConfig(const FleetConfig& cfg,
                                RunMode mode = RunMode::kLearning);

}  // namespace cdl

#endif  // CDL_CONFIG_H_
