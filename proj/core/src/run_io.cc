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

#include "cdl/run_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace cdl {
namespace {

constexpr int kColumns = 21;

void Put(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v == 0.0 ? 0.0 : v);
  if (!line.empty()) line += ',';
  line += buf;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> HeaderColumns() { return Split(kRunLogHeader); }

}  // namespace

void WriteRunLogCsv(const std::filesystem::path& path,
                    std::span<const AgentRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kRunLogHeader << '\n';
  std::string line;
  for (const AgentRecord& r : records) {
    line.clear();
    Put(line, r.t);
    line += ',' + std::to_string(r.agent + 1);
    for (double v : {r.q.x, r.q.y, r.q.theta, r.u.v, r.u.omega, r.u_hat.v,
                     r.u_hat.omega, r.x_r, r.y_r, r.theta_r, r.e.ex, r.e.ey,
                     r.e.etheta, r.tau.tau_v, r.tau.tau_w}) {
      Put(line, v);
    }
    line += r.saturated ? ",1" : ",0";
    Put(line, r.est_err.x());
    Put(line, r.est_err.y());
    Put(line, r.v_diag);
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<AgentRecord> ReadRunLogCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kRunLogHeader) {
    throw RunLogFormatError(path.string() + ":1: expected header '" +
                            std::string(kRunLogHeader) + "'");
  }
  const std::vector<std::string> names = HeaderColumns();
  std::vector<AgentRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = Split(line);
    if (static_cast<int>(fields.size()) != kColumns) {
      throw RunLogFormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected " + std::to_string(kColumns) +
                              " columns, got " +
                              std::to_string(fields.size()));
    }
    double v[kColumns];
    for (int c = 0; c < kColumns; ++c) {
      const std::string& f = fields[c];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[c]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw RunLogFormatError(path.string() + ":" + std::to_string(line_no) +
                                ": column '" + names[c] +
                                "' is not a number: '" + f + "'");
      }
    }
    AgentRecord r;
    r.t = v[0];
    r.agent = static_cast<int>(v[1]) - 1;
    r.q = {v[2], v[3], v[4]};
    r.u = {v[5], v[6]};
    r.u_hat = {v[7], v[8]};
    r.x_r = v[9];
    r.y_r = v[10];
    r.theta_r = v[11];
    r.e = {v[12], v[13], v[14]};
    r.tau = {v[15], v[16]};
    r.saturated = v[17] != 0.0;
    r.est_err = {v[18], v[19]};
    r.v_diag = v[20];
    if (r.agent < 0) {
      throw RunLogFormatError(path.string() + ":" + std::to_string(line_no) +
                              ": column 'agent' must be >= 1");
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace cdl
