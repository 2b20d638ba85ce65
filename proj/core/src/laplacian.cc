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

#include "btlrank/laplacian.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "btlrank/error.h"

namespace btlrank {
namespace {

void ProjectOutOnes(Eigen::VectorXd& v) {
  if (v.size() > 0) v.array() -= v.mean();
}

void RequireConnected(const LaplacianOperator& laplacian) {
  if (!laplacian.connected()) {
    throw NumericalError("Laplacian of a disconnected graph has no pseudo-inverse solve on 1-perp");
  }
}

}  // namespace

LaplacianOperator LaplacianOperator::Assemble(int n, std::span<const WeightedEdge> edges) {
  if (n < 0) throw InvalidArgumentError("negative Laplacian dimension");
  std::vector<WeightedEdge> normalized;
  normalized.reserve(edges.size());
  for (WeightedEdge edge : edges) {
    if (edge.i > edge.j) std::swap(edge.i, edge.j);
    if (edge.i < 0 || edge.j >= n) {
      throw InvalidArgumentError("Laplacian edge (" + std::to_string(edge.i) + ", " +
                                 std::to_string(edge.j) + ") out of range");
    }
    if (edge.i == edge.j) throw InvalidArgumentError("Laplacian self-loop");
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw InvalidArgumentError("Laplacian weights must be positive and finite");
    }
    normalized.push_back(edge);
  }
  std::sort(normalized.begin(), normalized.end(), [](const auto& x, const auto& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });

  LaplacianOperator op;
  op.n_ = n;
  for (const WeightedEdge& edge : normalized) {
    if (!op.edges_.empty() && op.edges_.back().i == edge.i && op.edges_.back().j == edge.j) {
      op.edges_.back().weight += edge.weight;
    } else {
      op.edges_.push_back(edge);
    }
  }

  std::vector<int> count(n, 0);
  for (const auto& edge : op.edges_) {
    ++count[edge.i];
    ++count[edge.j];
  }
  op.row_offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) op.row_offsets_[v + 1] = op.row_offsets_[v] + count[v];
  op.columns_.resize(op.row_offsets_.back());
  op.weights_.resize(op.row_offsets_.back());
  std::vector<int> fill(op.row_offsets_.begin(), op.row_offsets_.end() - 1);
  op.degree_.assign(n, 0.0);
  std::vector<std::pair<NodeId, NodeId>> endpoints;
  endpoints.reserve(op.edges_.size());
  for (const auto& edge : op.edges_) {
    op.columns_[fill[edge.i]] = edge.j;
    op.weights_[fill[edge.i]++] = edge.weight;
    op.columns_[fill[edge.j]] = edge.i;
    op.weights_[fill[edge.j]++] = edge.weight;
    op.degree_[edge.i] += edge.weight;
    op.degree_[edge.j] += edge.weight;
    endpoints.emplace_back(edge.i, edge.j);
  }
  op.connected_ = IsConnected(n, endpoints);
  return op;
}

void LaplacianOperator::Apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.resize(n_);
  for (int v = 0; v < n_; ++v) {
    const double xv = x[v];
    double sum = 0.0;
    for (int k = row_offsets_[v]; k < row_offsets_[v + 1]; ++k) {
      sum += weights_[k] * (xv - x[columns_[k]]);
    }
    y[v] = sum;
  }
}

Eigen::VectorXd LaplacianOperator::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  Apply(x, y);
  return y;
}

double LaplacianOperator::QuadraticForm(const Eigen::VectorXd& x) const {
  double sum = 0.0;
  for (const auto& edge : edges_) {
    const double d = x[edge.i] - x[edge.j];
    sum += edge.weight * d * d;
  }
  return sum;
}

Eigen::MatrixXd LaplacianOperator::ToDense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& edge : edges_) {
    dense(edge.i, edge.j) -= edge.weight;
    dense(edge.j, edge.i) -= edge.weight;
  }
  for (int v = 0; v < n_; ++v) dense(v, v) = -dense.row(v).sum();
  return dense;
}

LaplacianOperator LaplacianOperator::Scaled(double factor) const {
  std::vector<WeightedEdge> scaled = edges_;
  for (auto& edge : scaled) edge.weight *= factor;
  return Assemble(n_, scaled);
}

Eigen::MatrixXd DensePseudoInverse(const LaplacianOperator& laplacian) {
  const int n = laplacian.size();
  if (n == 0) return Eigen::MatrixXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian.ToDense());
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double cutoff = std::max(values.cwiseAbs().maxCoeff(), 1e-300) * n * 1e-13;
  Eigen::VectorXd inverse(n);
  for (int k = 0; k < n; ++k) inverse[k] = values[k] > cutoff ? 1.0 / values[k] : 0.0;
  return eig.eigenvectors() * inverse.asDiagonal() * eig.eigenvectors().transpose();
}

SolveResult SolveOrthogonal(const LaplacianOperator& laplacian, const Eigen::VectorXd& b,
                            const SolveOptions& options) {
  const int n = laplacian.size();
  if (b.size() != n) throw InvalidArgumentError("right-hand side has the wrong length");
  RequireConnected(laplacian);

  SolveResult result;
  result.solution = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd rhs = b;
  ProjectOutOnes(rhs);
  const double rhs_norm = rhs.norm();
  if (n <= 1 || rhs_norm == 0.0) {
    result.report.converged = true;
    return result;
  }

  const int max_iterations = options.max_iterations > 0 ? options.max_iterations : 10 * n;
  Eigen::VectorXd inverse_diagonal(n);
  for (int v = 0; v < n; ++v) inverse_diagonal[v] = 1.0 / laplacian.degree(v);

  Eigen::VectorXd& x = result.solution;
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z(n), p(n), q(n);
  int iterations = 0;
  double residual = 1.0;

  // Restarted so that a drifting recurrence residual is caught by the true one.
  while (iterations < max_iterations) {
    const int restart_at = iterations;
    z = inverse_diagonal.cwiseProduct(r);
    ProjectOutOnes(z);
    p = z;
    double rz = r.dot(z);
    while (iterations < max_iterations) {
      laplacian.Apply(p, q);
      const double pq = p.dot(q);
      if (!(pq > 0.0)) break;
      const double alpha = rz / pq;
      x.noalias() += alpha * p;
      r.noalias() -= alpha * q;
      ++iterations;
      if (r.norm() <= options.tolerance * rhs_norm) break;
      z = inverse_diagonal.cwiseProduct(r);
      ProjectOutOnes(z);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    ProjectOutOnes(x);
    laplacian.Apply(x, q);
    r = rhs - q;
    residual = r.norm() / rhs_norm;
    if (residual <= options.tolerance || iterations == restart_at) break;
  }

  result.report.iterations = iterations;
  result.report.residual = residual;
  result.report.converged = residual <= options.tolerance;
  if (!result.report.converged && options.dense_fallback && n <= options.dense_fallback_max_n) {
    x = DensePseudoInverse(laplacian) * rhs;
    ProjectOutOnes(x);
    laplacian.Apply(x, q);
    result.report.residual = (rhs - q).norm() / rhs_norm;
    result.report.converged = result.report.residual <= options.tolerance;
    result.report.used_dense = true;
  }
  return result;
}

struct LaplacianFactor::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
};

LaplacianFactor::LaplacianFactor(const LaplacianOperator& laplacian)
    : n_(laplacian.size()), impl_(std::make_unique<Impl>()) {
  RequireConnected(laplacian);
  if (n_ <= 1) return;
  // Ground the last node: the reduced matrix is SPD for a connected graph.
  const int m = n_ - 1;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(laplacian.edges().size() * 4);
  for (const auto& edge : laplacian.edges()) {
    if (edge.i < m) triplets.emplace_back(edge.i, edge.i, edge.weight);
    if (edge.j < m) triplets.emplace_back(edge.j, edge.j, edge.weight);
    if (edge.j < m) {
      triplets.emplace_back(edge.i, edge.j, -edge.weight);
      triplets.emplace_back(edge.j, edge.i, -edge.weight);
    }
  }
  Eigen::SparseMatrix<double> reduced(m, m);
  reduced.setFromTriplets(triplets.begin(), triplets.end());
  impl_->solver.compute(reduced);
  if (impl_->solver.info() != Eigen::Success) {
    throw NumericalError("sparse factorization of the grounded Laplacian failed");
  }
}

LaplacianFactor::~LaplacianFactor() = default;
LaplacianFactor::LaplacianFactor(LaplacianFactor&&) noexcept = default;
LaplacianFactor& LaplacianFactor::operator=(LaplacianFactor&&) noexcept = default;

Eigen::VectorXd LaplacianFactor::Solve(const Eigen::VectorXd& b) const {
  if (b.size() != n_) throw InvalidArgumentError("right-hand side has the wrong length");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
  if (n_ <= 1) return x;
  Eigen::VectorXd rhs = b;
  ProjectOutOnes(rhs);
  x.head(n_ - 1) = impl_->solver.solve(rhs.head(n_ - 1));
  ProjectOutOnes(x);
  return x;
}

double EffectiveResistance(const LaplacianOperator& laplacian, NodeId k, NodeId l,
                           const SolveOptions& options) {
  const int n = laplacian.size();
  if (k < 0 || l < 0 || k >= n || l >= n) throw InvalidArgumentError("node out of range");
  if (k == l) return 0.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[k] = 1.0;
  b[l] = -1.0;
  SolveResult solved = SolveOrthogonal(laplacian, b, options);
  if (!solved.report.converged) {
    throw NumericalError("effective resistance solve did not converge");
  }
  return solved.solution[k] - solved.solution[l];
}

PseudoInverseColumns::PseudoInverseColumns(const LaplacianOperator& laplacian,
                                           std::vector<NodeId> nodes)
    : n_(laplacian.size()), slot_(laplacian.size(), -1), zero_(Eigen::VectorXd::Zero(n_)) {
  if (nodes.empty()) {
    nodes.resize(n_);
    for (int v = 0; v < n_; ++v) nodes[v] = v;
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty()) return;
  for (NodeId v : nodes) {
    if (v < 0 || v >= n_) throw InvalidArgumentError("node out of range");
  }
  anchor_ = nodes.back();
  LaplacianFactor factor(laplacian);
  columns_.reserve(nodes.size() - 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_);
  for (NodeId v : nodes) {
    if (v == anchor_) continue;
    b[v] = 1.0;
    b[anchor_] = -1.0;
    slot_[v] = static_cast<int>(columns_.size());
    columns_.push_back(factor.Solve(b));
    b[v] = 0.0;
    b[anchor_] = 0.0;
  }
}

const Eigen::VectorXd& PseudoInverseColumns::ColumnOf(NodeId k) const {
  if (k == anchor_) return zero_;
  if (k < 0 || k >= n_ || slot_[k] < 0) {
    throw InvalidArgumentError("node " + std::to_string(k) + " has no pseudo-inverse column");
  }
  return columns_[slot_[k]];
}

double PseudoInverseColumns::Potential(NodeId i, NodeId k, NodeId l) const {
  return ColumnOf(k)[i] - ColumnOf(l)[i];
}

Eigen::VectorXd PseudoInverseColumns::Column(NodeId k, NodeId l) const {
  return ColumnOf(k) - ColumnOf(l);
}

double PseudoInverseColumns::Resistance(NodeId k, NodeId l) const {
  if (k == l) return 0.0;
  return Potential(k, k, l) - Potential(l, k, l);
}

std::map<NodePair, double> ResistanceMatrix(const LaplacianOperator& laplacian,
                                            std::span<const NodePair> pairs) {
  std::vector<NodePair> wanted;
  const int n = laplacian.size();
  if (pairs.empty()) {
    for (NodeId k = 0; k < n; ++k) {
      for (NodeId l = k + 1; l < n; ++l) wanted.push_back({k, l});
    }
  } else {
    for (NodePair pair : pairs) {
      if (pair.k > pair.l) std::swap(pair.k, pair.l);
      wanted.push_back(pair);
    }
  }
  std::set<NodeId> nodes;
  for (const auto& pair : wanted) {
    nodes.insert(pair.k);
    nodes.insert(pair.l);
  }
  PseudoInverseColumns columns(laplacian, {nodes.begin(), nodes.end()});
  std::map<NodePair, double> result;
  for (const auto& pair : wanted) result[pair] = columns.Resistance(pair.k, pair.l);
  return result;
}

}  // namespace btlrank
