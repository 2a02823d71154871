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

#include "cdl/weights_io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace cdl {
namespace {

constexpr std::array<const char*, 5> kColumns = {"node_index", "center_v",
                                                 "center_w", "w_v", "w_omega"};

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseCell(const std::string& cell, int column, int line_no,
                 const std::filesystem::path& path) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw WeightsFormatError(path.string() + ":" + std::to_string(line_no) +
                             ": column '" + kColumns[column] +
                             "' is not a finite number: '" + cell + "'");
  }
  return value;
}

}  // namespace

void WriteWeightsCsv(const std::filesystem::path& path,
                     const RbfLattice& lattice, const WeightMatrix& weights) {
  if (weights.rows() != lattice.size()) {
    throw std::invalid_argument("weights row count does not match lattice");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kWeightsCsvHeader << '\n';
  char buf[160];
  for (int i = 0; i < lattice.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", i,
                  lattice.centers[i].x(), lattice.centers[i].y(),
                  weights(i, 0), weights(i, 1));
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

WeightMatrix ReadWeightsCsv(const std::filesystem::path& path,
                            const RbfLattice& lattice) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw WeightsFormatError(path.string() + ": empty file, missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCsv(line);
  for (size_t c = 0; c < kColumns.size(); ++c) {
    if (c >= header.size() || header[c] != kColumns[c]) {
      throw WeightsFormatError(path.string() + ":1: expected column '" +
                               kColumns[c] + "' at position " +
                               std::to_string(c + 1));
    }
  }
  if (header.size() != kColumns.size()) {
    throw WeightsFormatError(path.string() + ":1: unexpected column '" +
                             header[kColumns.size()] + "'");
  }

  WeightMatrix w(lattice.size(), 2);
  int row = 0;
  int line_no = 1;
  const double tol = 1e-9 * (1.0 + lattice.spacing().maxCoeff());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != kColumns.size()) {
      const size_t missing = std::min(cells.size(), kColumns.size() - 1);
      throw WeightsFormatError(
          path.string() + ":" + std::to_string(line_no) + ": expected " +
          std::to_string(kColumns.size()) + " columns, got " +
          std::to_string(cells.size()) + " (check column '" +
          kColumns[missing] + "')");
    }
    if (row >= lattice.size()) {
      throw WeightsFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": column 'node_index' exceeds lattice size " +
                               std::to_string(lattice.size()));
    }
    const double idx = ParseCell(cells[0], 0, line_no, path);
    if (idx != static_cast<double>(row)) {
      throw WeightsFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": column 'node_index' expected " +
                               std::to_string(row));
    }
    const double cv = ParseCell(cells[1], 1, line_no, path);
    const double cw = ParseCell(cells[2], 2, line_no, path);
    if (std::abs(cv - lattice.centers[row].x()) > tol) {
      throw WeightsFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": column 'center_v' does not match lattice");
    }
    if (std::abs(cw - lattice.centers[row].y()) > tol) {
      throw WeightsFormatError(path.string() + ":" + std::to_string(line_no) +
                               ": column 'center_w' does not match lattice");
    }
    w(row, 0) = ParseCell(cells[3], 3, line_no, path);
    w(row, 1) = ParseCell(cells[4], 4, line_no, path);
    ++row;
  }
  if (row != lattice.size()) {
    throw WeightsFormatError(path.string() + ": column 'node_index' has " +
                             std::to_string(row) + " rows, lattice has " +
                             std::to_string(lattice.size()));
  }
  return w;
}

std::string SnapshotFileName(int agent_index0, double t) {
  const long long millis = std::llround(t * 1000.0);
  return "weights_agent" + std::to_string(agent_index0 + 1) + "_t" +
         std::to_string(millis) + ".csv";
}

std::string ConsolidatedFileName(int agent_index0) {
  return "wbar_agent" + std::to_string(agent_index0 + 1) + ".csv";
}

}  // namespace cdl
