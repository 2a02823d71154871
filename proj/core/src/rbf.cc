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

#include "cdl/rbf.h"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cdl {

Eigen::Vector2d RbfLattice::spacing() const {
  return {(box_max.x() - box_min.x()) / (nodes[0] - 1),
          (box_max.y() - box_min.y()) / (nodes[1] - 1)};
}

RbfLattice BuildLattice(const Eigen::Vector2d& box_min,
                        const Eigen::Vector2d& box_max,
                        std::array<int, 2> nodes_per_dim, double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("rbf width must be positive");
  }
  if (!(box_min.x() < box_max.x()) || !(box_min.y() < box_max.y()) ||
      !box_min.allFinite() || !box_max.allFinite()) {
    throw std::invalid_argument("rbf box is degenerate: need box_min < box_max");
  }
  if (nodes_per_dim[0] < 2 || nodes_per_dim[1] < 2) {
    throw std::invalid_argument("rbf lattice needs at least 2 nodes per dim");
  }
  RbfLattice lat;
  lat.width = width;
  lat.box_min = box_min;
  lat.box_max = box_max;
  lat.nodes = nodes_per_dim;
  lat.centers.reserve(static_cast<size_t>(nodes_per_dim[0]) * nodes_per_dim[1]);
  for (int i = 0; i < nodes_per_dim[0]; ++i) {
    // Interpolate from both ends so the last node lands exactly on box_max.
    const double a = static_cast<double>(i) / (nodes_per_dim[0] - 1);
    const double cv = (1.0 - a) * box_min.x() + a * box_max.x();
    for (int j = 0; j < nodes_per_dim[1]; ++j) {
      const double b = static_cast<double>(j) / (nodes_per_dim[1] - 1);
      const double cw = (1.0 - b) * box_min.y() + b * box_max.y();
      lat.centers.emplace_back(cv, cw);
    }
  }
  return lat;
}

Eigen::VectorXd EvalBasis(const RbfLattice& lattice, const Eigen::Vector2d& x) {
  const double inv_w2 = 1.0 / (lattice.width * lattice.width);
  Eigen::VectorXd s(lattice.size());
  for (int i = 0; i < lattice.size(); ++i) {
    s[i] = std::exp(-(x - lattice.centers[i]).squaredNorm() * inv_w2);
  }
  return s;
}

Eigen::Vector2d Predict(const WeightMatrix& weights, const Eigen::VectorXd& s) {
  assert(weights.rows() == s.size());
  return weights.transpose() * s;
}

PeLevel PersistentExcitationLevel(const RbfLattice& lattice,
                                  std::span<const Eigen::Vector2d> trajectory,
                                  double dt, double threshold) {
  if (trajectory.empty()) {
    throw std::invalid_argument("PE level needs a nonempty trajectory");
  }
  const int n = lattice.size();
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(trajectory.size());
  Eigen::VectorXd peak = Eigen::VectorXd::Zero(n);
  for (const auto& x : trajectory) {
    basis.push_back(EvalBasis(lattice, x));
    peak = peak.cwiseMax(basis.back());
  }

  PeLevel out;
  for (int i = 0; i < n; ++i) {
    if (peak[i] > threshold) out.active.push_back(i);
  }
  if (out.active.empty()) {
    out.empty_active = true;
    return out;
  }

  const int k = static_cast<int>(out.active.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd sub(k);
  for (const auto& s : basis) {
    for (int a = 0; a < k; ++a) sub[a] = s[out.active[a]];
    gram.selfadjointView<Eigen::Lower>().rankUpdate(sub, dt);
  }
  const double horizon = dt * static_cast<double>(trajectory.size());
  gram = gram.selfadjointView<Eigen::Lower>();
  gram /= horizon;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram,
                                                     Eigen::EigenvaluesOnly);
  out.lambda_min = std::max(0.0, eig.eigenvalues()[0]);
  return out;
}

}  // namespace cdl
