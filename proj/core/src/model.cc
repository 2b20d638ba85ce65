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

#include "btlrank/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "btlrank/error.h"

namespace btlrank {

double Sigmoid(double x) {
  const double e = std::exp(-std::abs(x));
  return x >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

double SigmoidDerivative(double x) {
  const double e = std::exp(-std::abs(x));
  const double denom = 1.0 + e;
  return e / (denom * denom);
}

double Softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double Logit(double y) {
  if (!(y > 0.0 && y < 1.0)) {
    throw InvalidArgumentError("logit(" + std::to_string(y) +
                               ") is infinite; more samples per edge are needed");
  }
  return std::log(y) - std::log1p(-y);
}

ScoreVector::ScoreVector(Eigen::VectorXd values, Gauge gauge)
    : values_(std::move(values)), gauge_(gauge) {
  if (gauge_ == Gauge::kZeroSum && values_.size() > 0 &&
      std::abs(values_.sum()) > 1e-9 * static_cast<double>(values_.size())) {
    throw InvalidArgumentError("zero-sum score vector does not sum to zero");
  }
}

ScoreVector ScoreVector::ZeroSum(Eigen::VectorXd values) {
  return ScoreVector(CenterScores(std::move(values)), Gauge::kZeroSum);
}

Eigen::VectorXd CenterScores(Eigen::VectorXd values) {
  if (values.size() > 0) values.array() -= values.mean();
  return values;
}

ScoreVector MakeScores(ScoreKind kind, int n, double r, GridKind layout) {
  if (n < 1) throw InvalidArgumentError("scores need n >= 1");
  if (!(r > 0.0)) throw InvalidArgumentError("scores need r > 0");
  Eigen::VectorXd raw(n);
  if (layout == GridKind::k1D) {
    for (int i = 0; i < n; ++i) {
      const double position = i + 1;
      raw[i] = kind == ScoreKind::kSine ? std::sin(position / r) : position / r;
    }
  } else {
    GridSpec spec{GridKind::k2D, n, 1, 1.0};
    spec.Validate();
    const int side = spec.side();
    for (int i1 = 0; i1 < side; ++i1) {
      for (int i2 = 0; i2 < side; ++i2) {
        const double a = i1 + 1;
        const double b = i2 + 1;
        raw[i1 * side + i2] =
            kind == ScoreKind::kSine ? std::sin(a / r) + std::sin(b / r) : (a + b) / r;
      }
    }
  }
  return ScoreVector::ZeroSum(std::move(raw));
}

DynamicRange ComputeDynamicRange(const ComparisonGraph& graph, const Eigen::VectorXd& scores) {
  DynamicRange range;
  if (scores.size() == 0) return range;
  range.kappa = std::exp(scores.maxCoeff() - scores.minCoeff());
  double edge_gap = 0.0;
  for (const Edge& edge : graph.edges()) {
    edge_gap = std::max(edge_gap, std::abs(scores[edge.i] - scores[edge.j]));
  }
  range.kappa_edge = std::exp(edge_gap);
  return range;
}

ComparisonData::ComparisonData(const ComparisonGraph& graph, std::vector<EdgeOutcome> outcomes)
    : num_nodes_(graph.num_nodes()), outcomes_(std::move(outcomes)) {
  if (outcomes_.size() != graph.num_edges()) {
    throw InvalidArgumentError("comparison data has " + std::to_string(outcomes_.size()) +
                               " rows for " + std::to_string(graph.num_edges()) + " edges");
  }
  for (std::size_t e = 0; e < outcomes_.size(); ++e) {
    const EdgeOutcome& o = outcomes_[e];
    const Edge& edge = graph.edge(e);
    if (o.i != edge.i || o.j != edge.j || o.samples != edge.samples) {
      throw InvalidArgumentError("comparison data row " + std::to_string(e) +
                                 " does not match graph edge (" + std::to_string(edge.i) +
                                 ", " + std::to_string(edge.j) + ")");
    }
    if (!(o.wins >= 0.0 && o.wins <= o.samples)) {
      throw InvalidArgumentError("wins outside [0, L] on edge (" + std::to_string(o.i) + ", " +
                                 std::to_string(o.j) + ")");
    }
  }
}

ComparisonData ComparisonData::Population(const ComparisonGraph& graph,
                                          const Eigen::VectorXd& scores) {
  if (scores.size() != graph.num_nodes()) throw InvalidArgumentError("score length mismatch");
  std::vector<EdgeOutcome> outcomes;
  outcomes.reserve(graph.num_edges());
  for (const Edge& edge : graph.edges()) {
    outcomes.push_back({edge.i, edge.j,
                        edge.samples * Sigmoid(scores[edge.i] - scores[edge.j]), edge.samples});
  }
  return ComparisonData(graph, std::move(outcomes));
}

ComparisonData SampleComparisons(const ComparisonGraph& graph, const Eigen::VectorXd& scores,
                                 Rng& rng) {
  if (scores.size() != graph.num_nodes()) throw InvalidArgumentError("score length mismatch");
  std::vector<EdgeOutcome> outcomes;
  outcomes.reserve(graph.num_edges());
  for (const Edge& edge : graph.edges()) {
    const int wins = rng.Binomial(edge.samples, Sigmoid(scores[edge.i] - scores[edge.j]));
    outcomes.push_back({edge.i, edge.j, static_cast<double>(wins), edge.samples});
  }
  return ComparisonData(graph, std::move(outcomes));
}

std::vector<double> ModelWeights(const ComparisonGraph& graph, const Eigen::VectorXd& scores) {
  if (scores.size() != graph.num_nodes()) throw InvalidArgumentError("score length mismatch");
  std::vector<double> z;
  z.reserve(graph.num_edges());
  for (const Edge& edge : graph.edges()) {
    z.push_back(SigmoidDerivative(scores[edge.i] - scores[edge.j]));
  }
  return z;
}

LaplacianOperator OracleLaplacian(const ComparisonGraph& graph, const Eigen::VectorXd& scores) {
  if (!graph.connected()) throw InvalidArgumentError("oracle Laplacian needs a connected graph");
  const std::vector<double> z = ModelWeights(graph, scores);
  std::vector<WeightedEdge> weighted;
  weighted.reserve(graph.num_edges());
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    weighted.push_back({edge.i, edge.j, std::max(edge.samples * z[e], 1e-300)});
  }
  return LaplacianOperator::Assemble(graph.num_nodes(), weighted);
}

LaplacianOperator SurrogateLaplacian(const ComparisonGraph& graph, double scale) {
  if (!graph.connected()) {
    throw InvalidArgumentError("surrogate Laplacian needs a connected graph");
  }
  std::vector<WeightedEdge> weighted;
  weighted.reserve(graph.num_edges());
  for (const Edge& edge : graph.edges()) {
    weighted.push_back({edge.i, edge.j, scale * edge.samples});
  }
  return LaplacianOperator::Assemble(graph.num_nodes(), weighted);
}

}  // namespace btlrank
