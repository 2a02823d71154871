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

#ifndef CDL_RBF_H_
#define CDL_RBF_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace cdl {

// N x 2 weights; column 0 drives the v channel, column 1 the omega channel.
using WeightMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

// Gaussian centers on a regular tensor grid over a 2-D input box.
//
// Centers are stored v-major: index = i_v * nodes[1] + i_w. Both box
// endpoints are lattice nodes.
struct RbfLattice {
  std::vector<Eigen::Vector2d> centers;
  double width = 1.0;
  Eigen::Vector2d box_min = Eigen::Vector2d::Zero();
  Eigen::Vector2d box_max = Eigen::Vector2d::Ones();
  std::array<int, 2> nodes = {2, 2};

  int size() const { return static_cast<int>(centers.size()); }
  Eigen::Vector2d spacing() const;
};

// Throws std::invalid_argument on a degenerate box, fewer than two nodes per
// dimension, or a non-positive width.
RbfLattice BuildLattice(const Eigen::Vector2d& box_min,
                        const Eigen::Vector2d& box_max,
                        std::array<int, 2> nodes_per_dim, double width);

// s_i(X) = exp(-|X - mu_i|^2 / width^2).
Eigen::VectorXd EvalBasis(const RbfLattice& lattice, const Eigen::Vector2d& x);

// W^T S.
Eigen::Vector2d Predict(const WeightMatrix& weights, const Eigen::VectorXd& s);

struct PeLevel {
  double lambda_min = 0.0;
  std::vector<int> active;  // lattice indices of the regressor subvector
  bool empty_active = false;
};

// Empirical persistency-of-excitation level of the regressor subvector
// selected along `trajectory`.
//
// A node is active when its basis value exceeds `threshold` at some sample.
// Returns the smallest eigenvalue of (1/T) sum_k S_a(X_k) S_a(X_k)^T dt with
// T = samples * dt; zero (and empty_active) when nothing is active.
PeLevel PersistentExcitationLevel(const RbfLattice& lattice,
                                  std::span<const Eigen::Vector2d> trajectory,
                                  double dt, double threshold = 0.1);

}  // namespace cdl

#endif  // CDL_RBF_H_
