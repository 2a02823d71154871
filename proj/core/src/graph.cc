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

#include "cdl/graph.h"

#include <cmath>
#include <deque>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cdl {
namespace {

std::string Pair(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void CheckSize(int n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one agent");
}

}  // namespace

FleetGraph CycleGraph(int n) {
  CheckSize(n);
  FleetGraph g{Eigen::MatrixXd::Zero(n, n)};
  if (n == 1) return g;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (i == j) continue;
    g.adjacency(i, j) = 1.0;
    g.adjacency(j, i) = 1.0;
  }
  return g;
}

FleetGraph CompleteGraph(int n) {
  CheckSize(n);
  FleetGraph g{Eigen::MatrixXd::Ones(n, n)};
  g.adjacency.diagonal().setZero();
  return g;
}

FleetGraph PathGraph(int n) {
  CheckSize(n);
  FleetGraph g{Eigen::MatrixXd::Zero(n, n)};
  for (int i = 0; i + 1 < n; ++i) {
    g.adjacency(i, i + 1) = 1.0;
    g.adjacency(i + 1, i) = 1.0;
  }
  return g;
}

FleetGraph GraphPreset(std::string_view name, int n) {
  if (name == "cycle") return CycleGraph(n);
  if (name == "complete") return CompleteGraph(n);
  if (name == "path") return PathGraph(n);
  throw std::invalid_argument("unknown graph preset '" + std::string(name) +
                              "' (expected cycle, complete or path)");
}

Eigen::MatrixXd Laplacian(const FleetGraph& g) {
  const int n = g.n();
  Eigen::MatrixXd l = -g.adjacency;
  for (int i = 0; i < n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) degree += g.adjacency(i, j);
    }
    l(i, i) = degree;
  }
  return l;
}

bool IsConnected(const FleetGraph& g) {
  const int n = g.n();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::deque<int> frontier{0};
  seen[0] = true;
  int count = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop_front();
    for (int j = 0; j < n; ++j) {
      if (!seen[j] && (g.adjacency(i, j) > 0.0 || g.adjacency(j, i) > 0.0)) {
        seen[j] = true;
        ++count;
        frontier.push_back(j);
      }
    }
  }
  return count == n;
}

double AlgebraicConnectivity(const FleetGraph& g) {
  if (g.n() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Laplacian(g),
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues()[1];
}

std::vector<GraphViolation> ValidateGraph(const FleetGraph& g) {
  using Kind = GraphViolation::Kind;
  std::vector<GraphViolation> out;
  if (g.adjacency.rows() != g.adjacency.cols() || g.adjacency.rows() == 0) {
    out.push_back({Kind::kNotSquare, -1, -1,
                   "adjacency must be a nonempty square matrix"});
    return out;
  }
  const int n = g.n();
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = g.adjacency(i, j);
      if (!std::isfinite(a)) {
        out.push_back({Kind::kNonFinite, i, j,
                       "adjacency entry " + Pair(i, j) + " is not finite"});
        finite = false;
        continue;
      }
      if (i == j) {
        if (a != 0.0) {
          out.push_back({Kind::kSelfLoop, i, j,
                         "adjacency diagonal " + Pair(i, j) + " must be zero"});
        }
        continue;
      }
      if (a < 0.0) {
        out.push_back({Kind::kNegativeWeight, i, j,
                       "adjacency entry " + Pair(i, j) + " is negative"});
      }
      if (j > i && a != g.adjacency(j, i)) {
        out.push_back({Kind::kAsymmetric, i, j,
                       "adjacency is not symmetric at " + Pair(i, j)});
      }
    }
  }
  if (finite && !IsConnected(g)) {
    out.push_back({Kind::kDisconnected, -1, -1, "graph is not connected"});
  }
  return out;
}

}  // namespace cdl
