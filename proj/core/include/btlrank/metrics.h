// Copyright 2026 The btlrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BTLRANK_METRICS_H_
#define BTLRANK_METRICS_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "btlrank/graph.h"
#include "btlrank/laplacian.h"

namespace btlrank {

struct PairwiseErrorReport {
  // |delta_k - delta_l| for each requested pair (empty when none requested).
  std::vector<double> pair_errors;
  double max_pairwise = 0.0;
  double linf = 0.0;  // of the centered error
  double l2 = 0.0;    // of the centered error
};

// delta = center(theta) - center(theta_star). Without a pair list the
// maximum runs over all pairs, i.e. max(delta) - min(delta).
PairwiseErrorReport ErrorReport(const Eigen::VectorXd& theta, const Eigen::VectorXd& theta_star,
                                std::span<const NodePair> pairs = {});

struct BoundEntry {
  NodePair pair;
  double omega = 0.0;
  double b = 0.0;
  double q = 0.0;
  double v = 0.0;
};

struct BoundQuantities {
  std::vector<BoundEntry> entries;
  double c0 = 1.0;
  double delta = 0.1;
  double kappa_edge = 1.0;
  // Q_kl <= 4 B_kl on every edge (k, l).
  bool small_q_condition = false;
};

// B_kl = c0 sqrt(Omega_kl(L_z) kappa_E log(n / delta)),
// Q_kl = sum_E L_ij B_ij^2 |(e_k - e_l)^T L_z^+ (e_i - e_j)| and
// V_kl = sum_E L_ij |(e_k - e_l)^T L_z^+ (e_i - e_j)|.
// Entries cover `pairs` (all k < l when empty). Throws InvalidArgumentError
// unless 0 < delta < 0.5.
// Graphs up to this size get every pair k < l when no pair list is given;
// larger graphs get their edges.
inline constexpr int kAllPairsMaxNodes = 150;

BoundQuantities ComputeBoundQuantities(const LaplacianOperator& lz, const ComparisonGraph& graph,
                                       double kappa_edge, double delta, double c0,
                                       std::span<const NodePair> pairs = {});

// constant * sqrt(n / r^2 + 1) * sqrt(1 / (r p L)) for 1D grids and
// constant * sqrt(log(n) / r^2 + 1) * sqrt(1 / (r^2 p L)) for 2D grids.
double LocalityBound(GridKind kind, double n, double r, double p, double samples,
                     double constant);

}  // namespace btlrank

#endif  // BTLRANK_METRICS_H_
