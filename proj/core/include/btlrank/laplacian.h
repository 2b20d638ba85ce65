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

#ifndef BTLRANK_LAPLACIAN_H_
#define BTLRANK_LAPLACIAN_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "btlrank/graph.h"

namespace btlrank {

struct WeightedEdge {
  NodeId i = 0;
  NodeId j = 0;
  double weight = 0.0;
};

// Weighted graph Laplacian L = sum_e w_e (e_i - e_j)(e_i - e_j)^T.
//
// Parallel edges are merged at assembly (conductances add). Apply() evaluates
// (Lx)_i = sum_j w_ij (x_i - x_j) row by row, so L * 1 == 0 holds bit-exactly.
class LaplacianOperator {
 public:
  LaplacianOperator() = default;

  // Throws InvalidArgumentError on non-positive / non-finite weights,
  // out-of-range indices or self-loops.
  static LaplacianOperator Assemble(int n, std::span<const WeightedEdge> edges);

  int size() const { return n_; }
  // Merged edges, i < j, sorted lexicographically.
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  bool connected() const { return connected_; }
  // Weighted degree of node i.
  double degree(NodeId i) const { return degree_[i]; }

  void Apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  // x^T L x = sum_e w_e (x_i - x_j)^2.
  double QuadraticForm(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd ToDense() const;
  LaplacianOperator Scaled(double factor) const;

 private:
  int n_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<int> row_offsets_{0};
  std::vector<int> columns_;
  std::vector<double> weights_;
  std::vector<double> degree_;
  bool connected_ = true;
};

struct SolveOptions {
  double tolerance = 1e-10;  // relative residual ||Lv - b|| / ||b||
  int max_iterations = 0;    // 0 means 10 * n
  bool dense_fallback = true;
  int dense_fallback_max_n = 200;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  bool used_dense = false;
};

struct SolveResult {
  Eigen::VectorXd solution;
  SolveReport report;
};

// v = L^+ b, computed by Jacobi-preconditioned conjugate gradients with the
// all-ones direction deflated from every search direction. b is projected
// onto 1-perp first and the result satisfies v^T 1 = 0. When CG misses the
// tolerance and n <= dense_fallback_max_n, an eigendecomposition is used.
// Throws NumericalError when L is disconnected.
SolveResult SolveOrthogonal(const LaplacianOperator& laplacian, const Eigen::VectorXd& b,
                            const SolveOptions& options = {});

// Dense pseudo-inverse from a symmetric eigendecomposition, dropping the
// eigenvalues below a relative threshold. Intended for small n.
Eigen::MatrixXd DensePseudoInverse(const LaplacianOperator& laplacian);

// Cached factorization for repeated solves against one operator: sparse
// Cholesky of the Laplacian grounded at the last node, followed by a
// projection onto 1-perp. Thread-safe for concurrent Solve() calls.
class LaplacianFactor {
 public:
  explicit LaplacianFactor(const LaplacianOperator& laplacian);
  ~LaplacianFactor();
  LaplacianFactor(LaplacianFactor&&) noexcept;
  LaplacianFactor& operator=(LaplacianFactor&&) noexcept;

  int size() const { return n_; }
  Eigen::VectorXd Solve(const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  int n_ = 0;
  std::unique_ptr<Impl> impl_;
};

// Omega_kl = (e_k - e_l)^T L^+ (e_k - e_l); 0 when k == l.
double EffectiveResistance(const LaplacianOperator& laplacian, NodeId k, NodeId l,
                           const SolveOptions& options = {});

struct NodePair {
  NodeId k = 0;
  NodeId l = 0;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

// Columns v^(a) = L^+ (e_a - e_anchor) for a set of nodes, from one solve per
// node. Any potential (e_i)^T L^+ (e_k - e_l) of covered k, l follows by
// differencing, so n - 1 solves give the whole pseudo-inverse action.
class PseudoInverseColumns {
 public:
  // `nodes` empty means every node.
  PseudoInverseColumns(const LaplacianOperator& laplacian, std::vector<NodeId> nodes = {});

  // (e_i)^T L^+ (e_k - e_l).
  double Potential(NodeId i, NodeId k, NodeId l) const;
  // L^+ (e_k - e_l) as a dense vector.
  Eigen::VectorXd Column(NodeId k, NodeId l) const;
  double Resistance(NodeId k, NodeId l) const;

 private:
  const Eigen::VectorXd& ColumnOf(NodeId k) const;

  int n_ = 0;
  NodeId anchor_ = 0;
  std::vector<int> slot_;
  std::vector<Eigen::VectorXd> columns_;
  Eigen::VectorXd zero_;
};

// Omega for each requested pair (k < l normalized); all pairs when `pairs`
// is empty.
std::map<NodePair, double> ResistanceMatrix(const LaplacianOperator& laplacian,
                                            std::span<const NodePair> pairs = {});

}  // namespace btlrank

#endif  // BTLRANK_LAPLACIAN_H_
