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

#ifndef CDL_GRAPH_H_
#define CDL_GRAPH_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cdl {

// Fixed, undirected, weighted communication topology.
struct FleetGraph {
  Eigen::MatrixXd adjacency;

  int n() const { return static_cast<int>(adjacency.rows()); }
};

struct GraphViolation {
  enum class Kind { kNotSquare, kAsymmetric, kNegativeWeight, kSelfLoop,
                    kNonFinite, kDisconnected };
  Kind kind;
  int i = -1;  // 0-based indices; -1 when not applicable
  int j = -1;
  std::string message;
};

FleetGraph CycleGraph(int n);
FleetGraph CompleteGraph(int n);
FleetGraph PathGraph(int n);

// Builds a preset by name ("cycle", "complete", "path"). Throws
// std::invalid_argument for unknown names or n < 1.
FleetGraph GraphPreset(std::string_view name, int n);

// l_ii = sum_j a_ij, l_ij = -a_ij.
Eigen::MatrixXd Laplacian(const FleetGraph& g);

// Breadth-first search over edges with a_ij > 0.
bool IsConnected(const FleetGraph& g);

// Second-smallest Laplacian eigenvalue (0 for a single agent).
double AlgebraicConnectivity(const FleetGraph& g);

// Every violated invariant, each naming the offending indices.
std::vector<GraphViolation> ValidateGraph(const FleetGraph& g);

}  // namespace cdl

#endif  // CDL_GRAPH_H_
