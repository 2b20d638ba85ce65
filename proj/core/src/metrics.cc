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

#include "btlrank/metrics.h"

#include <algorithm>
#include <cmath>

#include "btlrank/error.h"

namespace btlrank {

PairwiseErrorReport ErrorReport(const Eigen::VectorXd& theta, const Eigen::VectorXd& theta_star,
                                std::span<const NodePair> pairs) {
  if (theta.size() != theta_star.size() || theta.size() == 0) {
    throw InvalidArgumentError("error report needs two score vectors of equal, positive length");
  }
  Eigen::VectorXd delta = theta - theta_star;
  delta.array() -= delta.mean();

  PairwiseErrorReport report;
  report.linf = delta.cwiseAbs().maxCoeff();
  report.l2 = delta.norm();
  if (pairs.empty()) {
    report.max_pairwise = delta.maxCoeff() - delta.minCoeff();
    return report;
  }
  report.pair_errors.reserve(pairs.size());
  for (const NodePair& pair : pairs) {
    if (pair.k < 0 || pair.l < 0 || pair.k >= delta.size() || pair.l >= delta.size()) {
      throw InvalidArgumentError("pair index out of range");
    }
    const double error = std::abs(delta[pair.k] - delta[pair.l]);
    report.pair_errors.push_back(error);
    report.max_pairwise = std::max(report.max_pairwise, error);
  }
  return report;
}

BoundQuantities ComputeBoundQuantities(const LaplacianOperator& lz, const ComparisonGraph& graph,
                                       double kappa_edge, double delta, double c0,
                                       std::span<const NodePair> pairs) {
  const int n = graph.num_nodes();
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgumentError("delta must lie in (0, 0.5)");
  if (lz.size() != n) throw InvalidArgumentError("L_z and graph disagree on the node count");
  if (!lz.connected()) throw InvalidArgumentError("L_z is disconnected");
  if (!(kappa_edge >= 1.0) || !(c0 > 0.0)) {
    throw InvalidArgumentError("kappa_E must be >= 1 and C0 positive");
  }

  BoundQuantities result;
  result.c0 = c0;
  result.delta = delta;
  result.kappa_edge = kappa_edge;
  const double scale = c0 * c0 * kappa_edge * std::log(n / delta);

  PseudoInverseColumns columns(lz);
  const auto& edges = graph.edges();
  std::vector<double> edge_b2(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edge_b2[e] = scale * columns.Resistance(edges[e].i, edges[e].j);
  }

  auto evaluate = [&](NodePair pair) {
    const Eigen::VectorXd v = columns.Column(pair.k, pair.l);
    BoundEntry entry;
    entry.pair = pair;
    entry.omega = std::max(0.0, v[pair.k] - v[pair.l]);
    entry.b = std::sqrt(scale * entry.omega);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const double flow = edges[e].samples * std::abs(v[edges[e].i] - v[edges[e].j]);
      entry.q += edge_b2[e] * flow;
      entry.v += flow;
    }
    return entry;
  };

  result.small_q_condition = true;
  for (const Edge& edge : edges) {
    const BoundEntry entry = evaluate({edge.i, edge.j});
    if (entry.q > 4.0 * entry.b) result.small_q_condition = false;
  }

  if (pairs.empty()) {
    if (n <= kAllPairsMaxNodes) {
      for (NodeId k = 0; k < n; ++k) {
        for (NodeId l = k + 1; l < n; ++l) result.entries.push_back(evaluate({k, l}));
      }
    } else {
      for (const Edge& edge : edges) result.entries.push_back(evaluate({edge.i, edge.j}));
    }
  } else {
    for (const NodePair& pair : pairs) {
      if (pair.k < 0 || pair.l < 0 || pair.k >= n || pair.l >= n) {
        throw InvalidArgumentError("pair index out of range");
      }
      result.entries.push_back(evaluate(pair));
    }
  }
  return result;
}

double LocalityBound(GridKind kind, double n, double r, double p, double samples,
                     double constant) {
  if (!(n > 0 && r > 0 && p > 0 && samples > 0)) {
    throw InvalidArgumentError("locality bound parameters must be positive");
  }
  if (kind == GridKind::k1D) {
    return constant * std::sqrt(n / (r * r) + 1.0) * std::sqrt(1.0 / (r * p * samples));
  }
  return constant * std::sqrt(std::log(n) / (r * r) + 1.0) * std::sqrt(1.0 / (r * r * p * samples));
}

}  // namespace btlrank
