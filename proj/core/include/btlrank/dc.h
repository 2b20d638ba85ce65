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

#ifndef BTLRANK_DC_H_
#define BTLRANK_DC_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "btlrank/estimators.h"
#include "btlrank/graph.h"
#include "btlrank/laplacian.h"
#include "btlrank/model.h"

namespace btlrank {

enum class LocalMethod { kMle, kSpectral };

// theta_(a) for every subset a, indexed like partition.subset(a) and
// centered over the subset.
struct LocalEstimates {
  std::vector<Eigen::VectorXd> theta;
};

// c = Ltilde^+ x together with the super-graph Laplacian it came from.
struct AlignmentShifts {
  Eigen::VectorXd c;
  LaplacianOperator super_laplacian;
  SolveReport report;
};

struct DcResult {
  ScoreVector theta;
  LocalEstimates local;
  AlignmentShifts alignment;
};

// Step 1 of both divide-and-conquer estimators: one independent estimate per
// subset from the edges inside it, run on a worker pool. Throws
// NonexistenceError naming the offending subset.
LocalEstimates EstimateLocally(const ComparisonGraph& graph, const ComparisonData& data,
                               const Partition& partition, LocalMethod method,
                               int workers = 0);

// Least-squares shifts making overlapping local estimates agree:
// super-edge weights |V_a cap V_b| and
// x = sum_(a,b) sum_{i in overlap} (theta_(b)i - theta_(a)i)(e_a - e_b).
AlignmentShifts AlignOverlapping(const Partition& partition, const SuperGraph& super_graph,
                                 const LocalEstimates& local);

// DC-overlap. Requires an overlapping partition whose super-graph is
// connected.
DcResult DcOverlap(const ComparisonGraph& graph, const ComparisonData& data,
                   const Partition& partition, LocalMethod method = LocalMethod::kMle,
                   int workers = 0);

// Ground-truth quantities entering the alignment error identity:
// c*_a = mean of theta* over V_a and delta_(a) = theta_(a) - (theta*|V_a - c*_a).
struct AlignmentTruth {
  Eigen::VectorXd c_star;
  std::vector<Eigen::VectorXd> local_errors;
};
AlignmentTruth ComputeAlignmentTruth(const Partition& partition, const LocalEstimates& local,
                                     const Eigen::VectorXd& theta_star);

// ||(c - c*) - (-mean(c*) 1 + Ltilde^+ sum (delta_(b)i - delta_(a)i)(e_a - e_b))||_inf.
// Zero up to solver precision whenever c came from AlignOverlapping.
double AlignmentErrorIdentityResidual(const Partition& partition, const SuperGraph& super_graph,
                                      std::span<const Eigen::VectorXd> local_errors,
                                      const Eigen::VectorXd& c_star, const Eigen::VectorXd& c);

// w_ij = 1 / |{a : (i, j) in E_(a)}|. Throws InvalidArgumentError if some
// edge lies in no subgraph.
std::vector<double> PgdEdgeWeights(const ComparisonGraph& graph, const Partition& partition);

struct PgdOptions {
  double step = 0.0;         // 0: 2 / max weighted degree
  int max_iterations = 500;
  double gradient_tolerance = 0.0;  // 0: 1e-8 * total samples
  std::optional<Eigen::VectorXd> reference;
  double stop_loss = -std::numeric_limits<double>::infinity();
};

// Projected gradient descent on per-subgraph copies with shift-optimal
// re-projection. Each iteration takes one gradient step on every weighted
// local loss, aligns the copies through the super-graph Laplacian weighted by
// sum_{i in overlap} 1/s_i, and averages.
MleSolution PgdSolve(const ComparisonGraph& graph, const ComparisonData& data,
                     const Partition& partition, const PgdOptions& options,
                     const std::optional<Eigen::VectorXd>& initial = std::nullopt);

enum class CommunityWeighting { kUnit, kCrossEdgeCount };

// One cross edge seen from the (a, b) super-edge: i in V_a, j in V_b.
struct CrossTerm {
  double theta_a = 0.0;  // theta_(a)i
  double theta_b = 0.0;  // theta_(b)j
  double samples = 0.0;  // L_ij
  double wins = 0.0;     // comparisons won by i over j
};

// Root Delta of sum L_ij (sigma(theta_a - theta_b + Delta) - y_ij) = 0 by
// bisection on [-60, 60] to 1e-12. Throws NonexistenceError when the cross
// samples are unanimous (Delta = +-inf) or the root leaves the bracket.
double SolveCrossShift(std::span<const CrossTerm> terms);

struct CommunityResult {
  ScoreVector theta;
  LocalEstimates local;
  std::vector<double> deltas;  // per super_graph edge
  AlignmentShifts alignment;
};

// DC-community. Requires a disjoint partition with a connected cross-edge
// super-graph.
CommunityResult DcCommunity(const ComparisonGraph& graph, const ComparisonData& data,
                            const Partition& partition,
                            CommunityWeighting weighting = CommunityWeighting::kCrossEdgeCount,
                            LocalMethod method = LocalMethod::kMle, int workers = 0);

}  // namespace btlrank

#endif  // BTLRANK_DC_H_
