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

#ifndef BTLRANK_MODEL_H_
#define BTLRANK_MODEL_H_

#include <vector>

#include <Eigen/Core>

#include "btlrank/graph.h"
#include "btlrank/laplacian.h"
#include "btlrank/rng.h"

namespace btlrank {

// sigma(x) = 1 / (1 + e^-x), evaluated through exp(-|x|) so that it never
// overflows.
double Sigmoid(double x);
// sigma'(x) = sigma(x) sigma(-x).
double SigmoidDerivative(double x);
// log(1 + e^x) without overflow.
double Softplus(double x);
// sigma^{-1}(y). Throws InvalidArgumentError for y outside (0, 1): a win rate
// of exactly 0 or 1 has an infinite logit.
double Logit(double y);

enum class Gauge { kZeroSum, kRaw };

// Scores theta. Zero-sum vectors satisfy |sum| <= 1e-9 n.
class ScoreVector {
 public:
  ScoreVector() = default;
  ScoreVector(Eigen::VectorXd values, Gauge gauge);

  // Shifts `values` to zero mean.
  static ScoreVector ZeroSum(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  Gauge gauge() const { return gauge_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }

 private:
  Eigen::VectorXd values_;
  Gauge gauge_ = Gauge::kRaw;
};

// In-place mean removal.
Eigen::VectorXd CenterScores(Eigen::VectorXd values);

enum class ScoreKind { kSine, kLinear };

// Ground-truth recipes with 1-based positions: sine theta_i = sin(i / r),
// linear theta_i = i / r; on 2D grids (row-major, side = sqrt(n)) the linear
// recipe is (i1 + i2) / r and sine is sin(i1 / r) + sin(i2 / r). Result is
// zero-sum.
ScoreVector MakeScores(ScoreKind kind, int n, double r, GridKind layout = GridKind::k1D);

struct DynamicRange {
  double kappa = 1.0;       // exp(max_{k,l} |theta_k - theta_l|)
  double kappa_edge = 1.0;  // exp(max_{(i,j) in E} |theta_i - theta_j|)
};
DynamicRange ComputeDynamicRange(const ComparisonGraph& graph, const Eigen::VectorXd& scores);

// Outcomes on one edge (i < j): `wins` comparisons won by i out of `samples`.
// Sampled data always have integral wins; population (infinite-sample) data
// carry wins = samples * sigma(theta_i - theta_j).
struct EdgeOutcome {
  NodeId i = 0;
  NodeId j = 0;
  double wins = 0.0;
  int samples = 1;

  // y_ij, the fraction of comparisons won by i.
  double win_rate() const { return wins / samples; }
};

// Per-edge outcomes aligned index-for-index with a graph's edges().
class ComparisonData {
 public:
  ComparisonData() = default;
  // Throws InvalidArgumentError unless outcomes match the graph edges and
  // 0 <= wins <= samples.
  ComparisonData(const ComparisonGraph& graph, std::vector<EdgeOutcome> outcomes);

  // Expected outcomes, y_ij = sigma(theta_i - theta_j) exactly.
  static ComparisonData Population(const ComparisonGraph& graph, const Eigen::VectorXd& scores);

  int num_nodes() const { return num_nodes_; }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<EdgeOutcome>& outcomes() const { return outcomes_; }
  const EdgeOutcome& outcome(std::size_t e) const { return outcomes_[e]; }

 private:
  int num_nodes_ = 0;
  std::vector<EdgeOutcome> outcomes_;
};

// wins_ij ~ Binomial(L_ij, sigma(theta_i - theta_j)), independently per edge.
ComparisonData SampleComparisons(const ComparisonGraph& graph, const Eigen::VectorXd& scores,
                                 Rng& rng);

// z_ij = sigma'(theta_i - theta_j) per edge, in edge order.
std::vector<double> ModelWeights(const ComparisonGraph& graph, const Eigen::VectorXd& scores);

// L_z with weights L_ij z_ij (the Hessian of the loss at `scores`).
LaplacianOperator OracleLaplacian(const ComparisonGraph& graph, const Eigen::VectorXd& scores);

// L_G with weights scale * L_ij; scale = 0.25 gives the sigma'(0) surrogate.
LaplacianOperator SurrogateLaplacian(const ComparisonGraph& graph, double scale = 1.0);

}  // namespace btlrank

#endif  // BTLRANK_MODEL_H_
