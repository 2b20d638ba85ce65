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

#ifndef BTLRANK_ESTIMATORS_H_
#define BTLRANK_ESTIMATORS_H_

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "btlrank/graph.h"
#include "btlrank/laplacian.h"
#include "btlrank/model.h"

namespace btlrank {

// One term of the weighted negative log-likelihood:
//   weight * (-wins (theta_i - theta_j) + samples * log(1 + e^{theta_i - theta_j})).
struct LossTerm {
  NodeId i = 0;
  NodeId j = 0;
  double wins = 0.0;
  double samples = 0.0;
  double weight = 1.0;
};

// The MLE objective for a graph and its data, with optional per-edge weights
// (all 1 by default; PGD sub-problems use fractional ones).
class MleProblem {
 public:
  MleProblem(const ComparisonGraph& graph, const ComparisonData& data,
             std::vector<double> weights = {});

  int num_nodes() const { return graph_->num_nodes(); }
  const ComparisonGraph& graph() const { return *graph_; }
  const ComparisonData& data() const { return data_; }
  const std::vector<LossTerm>& terms() const { return terms_; }
  // Sum of weight * L_ij.
  double total_samples() const { return total_samples_; }

 private:
  std::shared_ptr<const ComparisonGraph> graph_;
  ComparisonData data_;
  std::vector<LossTerm> terms_;
  double total_samples_ = 0.0;
};

double Loss(const MleProblem& problem, const Eigen::VectorXd& theta);
Eigen::VectorXd Gradient(const MleProblem& problem, const Eigen::VectorXd& theta);
// Laplacian with weights w_ij L_ij sigma'(theta_i - theta_j).
LaplacianOperator Hessian(const MleProblem& problem, const Eigen::VectorXd& theta);

struct ExistenceCheck {
  bool exists = true;
  // When !exists: a non-empty proper node subset that never beats its
  // complement (its scores diverge to -infinity).
  std::vector<NodeId> violating_set;
};

// A finite, unique minimizer exists iff the "i beat j at least once" digraph
// is strongly connected.
ExistenceCheck CheckExistence(const MleProblem& problem);
bool MleExists(const MleProblem& problem);

enum class SolverMethod { kGradientDescent, kCoordinateDescent, kPreconditionedGD, kProjectedGD };
enum class Preconditioner { kOracle, kSurrogate, kQuarterSurrogate };

struct SolverConfig {
  SolverMethod method = SolverMethod::kPreconditionedGD;
  // 0 selects the method default: 1 for PrecondGD, 2 / (max weighted degree)
  // for GD and PGD.
  double step = 0.0;
  // 0 selects 100000 for GD/CD and 500 for PrecondGD/PGD.
  int max_iterations = 0;
  // Stop when ||grad||_2 <= tolerance; 0 selects 1e-8 * total_samples.
  double gradient_tolerance = 0.0;
  Preconditioner preconditioner = Preconditioner::kQuarterSurrogate;
  // Scores defining L_z for Preconditioner::kOracle.
  std::optional<Eigen::VectorXd> oracle_scores;
  // Required for PGD.
  std::shared_ptr<const Partition> partition;
  // When set, the trace records ||theta^t - reference||_inf (both centered).
  std::optional<Eigen::VectorXd> reference;
  // Stop early once loss(theta^t) <= stop_loss (used for iteration counts).
  double stop_loss = -std::numeric_limits<double>::infinity();
};

struct TraceRecord {
  int iteration = 0;
  double loss = 0.0;
  double gradient_norm = 0.0;
  double reference_distance = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;  // records[0] is the initial point
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
};

struct MleSolution {
  ScoreVector theta;
  ConvergenceTrace trace;
};

SolverConfig DefaultSolverConfig(SolverMethod method);

// Minimizes the loss. Throws NonexistenceError when no finite minimizer
// exists. Non-convergence is reported through trace.converged, not thrown.
MleSolution SolveMle(const MleProblem& problem, const SolverConfig& config,
                     const std::optional<Eigen::VectorXd>& initial = std::nullopt);

// Telescoped logits on a path graph: theta_next - theta_cur = logit(y_next,cur).
// Throws InvalidArgumentError if the graph is not a path and
// NonexistenceError if some win rate is 0 or 1.
ScoreVector ClosedFormLine(const MleProblem& problem);

struct SpectralOptions {
  std::optional<double> d;  // defaults to 1 + max degree
  double tolerance = 1e-13;  // on ||pi^T P - pi^T||_1
  int max_iterations = 1000000;
  double underflow_threshold = 1e-300;
  // An entry is unresolved when its own balance residual exceeds this
  // fraction of its value.
  double entry_tolerance = 1e-6;
};

struct SpectralResult {
  Eigen::VectorXd stationary;  // pi, sums to 1
  ScoreVector theta;           // log pi, centered over finite entries
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  // Set when some pi_i underflows (theta_i = -inf) or is too small to be
  // resolved by the iteration; the estimate is then unreliable.
  bool numerical_failure = false;
  int unresolved_entries = 0;
  std::string failure_note;
};

// Stationary distribution of the comparison random walk by power iteration.
// Throws InvalidArgumentError for a reducible chain.
SpectralResult SpectralEstimate(const ComparisonGraph& graph, const ComparisonData& data,
                                const SpectralOptions& options = {});

}  // namespace btlrank

#endif  // BTLRANK_ESTIMATORS_H_
