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

#include "btlrank/estimators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "btlrank/dc.h"
#include "btlrank/error.h"

namespace btlrank {
namespace {

// Nodes reachable from `source` along arcs.
std::vector<bool> Reachable(int n, const std::vector<std::vector<int>>& arcs, int source) {
  std::vector<bool> seen(n, false);
  std::vector<int> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : arcs[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

// Returns an empty set when the digraph is strongly connected, otherwise a
// non-empty proper subset with no arcs leaving it.
std::vector<int> ClosedSubset(int n, const std::vector<std::vector<int>>& forward) {
  if (n <= 1) return {};
  std::vector<bool> ahead = Reachable(n, forward, 0);
  std::vector<int> closed;
  for (int v = 0; v < n; ++v) {
    if (ahead[v]) closed.push_back(v);
  }
  if (static_cast<int>(closed.size()) < n) return closed;

  std::vector<std::vector<int>> backward(n);
  for (int u = 0; u < n; ++u) {
    for (int v : forward[u]) backward[v].push_back(u);
  }
  std::vector<bool> behind = Reachable(n, backward, 0);
  closed.clear();
  for (int v = 0; v < n; ++v) {
    if (!behind[v]) closed.push_back(v);
  }
  return closed;
}

std::string DescribeSet(const std::vector<int>& nodes) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < nodes.size() && k < 20; ++k) out << (k ? ", " : "") << nodes[k];
  if (nodes.size() > 20) out << ", ... (" << nodes.size() << " nodes)";
  out << "}";
  return out.str();
}

double CenteredDistance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd diff = a - b;
  diff.array() -= diff.mean();
  return diff.cwiseAbs().maxCoeff();
}

struct NodeTerm {
  int term;
  NodeId other;
  bool first;  // node is term.i
};

std::vector<std::vector<NodeTerm>> NodeTerms(const MleProblem& problem) {
  std::vector<std::vector<NodeTerm>> incident(problem.num_nodes());
  const auto& terms = problem.terms();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    incident[terms[t].i].push_back({static_cast<int>(t), terms[t].j, true});
    incident[terms[t].j].push_back({static_cast<int>(t), terms[t].i, false});
  }
  return incident;
}

double MaxWeightedDegree(const MleProblem& problem) {
  std::vector<double> degree(problem.num_nodes(), 0.0);
  for (const LossTerm& term : problem.terms()) {
    degree[term.i] += term.weight * term.samples;
    degree[term.j] += term.weight * term.samples;
  }
  return degree.empty() ? 1.0 : *std::max_element(degree.begin(), degree.end());
}

// Exact minimization of the loss over theta_node with the others fixed:
// Newton on the increasing derivative, safeguarded by a bisection bracket.
double MinimizeCoordinate(const MleProblem& problem, const std::vector<NodeTerm>& incident,
                          const Eigen::VectorXd& theta, NodeId node) {
  const auto& terms = problem.terms();
  double scale = 0.0;
  for (const NodeTerm& nt : incident) scale += terms[nt.term].weight * terms[nt.term].samples;
  if (scale == 0.0) return theta[node];

  auto derivative = [&](double t, double* curvature) {
    double f = 0.0, h = 0.0;
    for (const NodeTerm& nt : incident) {
      const LossTerm& term = terms[nt.term];
      const double own_wins = nt.first ? term.wins : term.samples - term.wins;
      const double d = t - theta[nt.other];
      f += term.weight * (term.samples * Sigmoid(d) - own_wins);
      h += term.weight * term.samples * SigmoidDerivative(d);
    }
    if (curvature) *curvature = h;
    return f;
  };

  const double tolerance = 1e-14 * scale;
  double t = theta[node];
  double curvature = 0.0;
  double f = derivative(t, &curvature);
  if (std::abs(f) <= tolerance) return t;

  double lo = t, hi = t;
  double step = 1.0;
  if (f > 0.0) {
    for (int k = 0; k < 64 && derivative(lo, nullptr) > 0.0; ++k, step *= 2.0) lo = t - step;
  } else {
    for (int k = 0; k < 64 && derivative(hi, nullptr) < 0.0; ++k, step *= 2.0) hi = t + step;
  }

  for (int k = 0; k < 200; ++k) {
    double next = curvature > 0.0 ? t - f / curvature : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
    f = derivative(t, &curvature);
    if (std::abs(f) <= tolerance) break;
    if (f > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi - lo <= 1e-15 * (1.0 + std::abs(t))) break;
  }
  return t;
}

}  // namespace

MleProblem::MleProblem(const ComparisonGraph& graph, const ComparisonData& data,
                       std::vector<double> weights)
    : graph_(std::make_shared<const ComparisonGraph>(graph)), data_(data) {
  if (data.size() != graph.num_edges() || data.num_nodes() != graph.num_nodes()) {
    throw InvalidArgumentError("comparison data does not match the graph");
  }
  if (!weights.empty() && weights.size() != graph.num_edges()) {
    throw InvalidArgumentError("one weight per edge is required");
  }
  terms_.reserve(graph.num_edges());
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const EdgeOutcome& outcome = data.outcome(e);
    const double w = weights.empty() ? 1.0 : weights[e];
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgumentError("edge weights must be > 0");
    terms_.push_back({outcome.i, outcome.j, outcome.wins, static_cast<double>(outcome.samples), w});
    total_samples_ += w * outcome.samples;
  }
}

double Loss(const MleProblem& problem, const Eigen::VectorXd& theta) {
  double sum = 0.0;
  for (const LossTerm& term : problem.terms()) {
    const double d = theta[term.i] - theta[term.j];
    sum += term.weight * (-term.wins * d + term.samples * Softplus(d));
  }
  return sum;
}

Eigen::VectorXd Gradient(const MleProblem& problem, const Eigen::VectorXd& theta) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(problem.num_nodes());
  for (const LossTerm& term : problem.terms()) {
    const double d = theta[term.i] - theta[term.j];
    const double a = term.weight * (term.samples * Sigmoid(d) - term.wins);
    g[term.i] += a;
    g[term.j] -= a;
  }
  return g;
}

LaplacianOperator Hessian(const MleProblem& problem, const Eigen::VectorXd& theta) {
  std::vector<WeightedEdge> weighted;
  weighted.reserve(problem.terms().size());
  for (const LossTerm& term : problem.terms()) {
    const double z = SigmoidDerivative(theta[term.i] - theta[term.j]);
    weighted.push_back({term.i, term.j, std::max(term.weight * term.samples * z, 1e-300)});
  }
  return LaplacianOperator::Assemble(problem.num_nodes(), weighted);
}

ExistenceCheck CheckExistence(const MleProblem& problem) {
  const int n = problem.num_nodes();
  std::vector<std::vector<int>> beats(n);
  for (const LossTerm& term : problem.terms()) {
    if (term.wins > 0.0) beats[term.i].push_back(term.j);
    if (term.wins < term.samples) beats[term.j].push_back(term.i);
  }
  ExistenceCheck check;
  check.violating_set = ClosedSubset(n, beats);
  check.exists = check.violating_set.empty();
  return check;
}

bool MleExists(const MleProblem& problem) { return CheckExistence(problem).exists; }

SolverConfig DefaultSolverConfig(SolverMethod method) {
  SolverConfig config;
  config.method = method;
  return config;
}

MleSolution SolveMle(const MleProblem& problem, const SolverConfig& config,
                     const std::optional<Eigen::VectorXd>& initial) {
  const int n = problem.num_nodes();
  if (initial && initial->size() != n) throw InvalidArgumentError("initial point has wrong length");
  const ExistenceCheck existence = CheckExistence(problem);
  if (!existence.exists) {
    throw NonexistenceError("no finite MLE: nodes " + DescribeSet(existence.violating_set) +
                                " never beat the remaining nodes",
                            existence.violating_set);
  }

  const bool first_order = config.method == SolverMethod::kGradientDescent ||
                           config.method == SolverMethod::kCoordinateDescent;
  const int max_iterations =
      config.max_iterations > 0 ? config.max_iterations : (first_order ? 100000 : 500);
  const double tolerance =
      config.gradient_tolerance > 0.0 ? config.gradient_tolerance : 1e-8 * problem.total_samples();

  if (config.method == SolverMethod::kProjectedGD) {
    if (!config.partition) throw InvalidArgumentError("PGD needs a partition");
    PgdOptions options;
    options.step = config.step;
    options.max_iterations = max_iterations;
    options.gradient_tolerance = tolerance;
    options.reference = config.reference;
    options.stop_loss = config.stop_loss;
    return PgdSolve(problem.graph(), problem.data(), *config.partition, options, initial);
  }

  Eigen::VectorXd theta = initial ? *initial : Eigen::VectorXd::Zero(n);
  MleSolution solution;
  ConvergenceTrace& trace = solution.trace;

  std::optional<LaplacianFactor> preconditioner;
  double step = config.step;
  std::vector<std::vector<NodeTerm>> incident;
  switch (config.method) {
    case SolverMethod::kGradientDescent:
      if (step <= 0.0) step = 2.0 / MaxWeightedDegree(problem);
      break;
    case SolverMethod::kCoordinateDescent:
      incident = NodeTerms(problem);
      break;
    case SolverMethod::kPreconditionedGD: {
      if (step <= 0.0) step = 1.0;
      std::vector<WeightedEdge> weighted;
      weighted.reserve(problem.terms().size());
      if (config.preconditioner == Preconditioner::kOracle && !config.oracle_scores) {
        throw InvalidArgumentError("the oracle preconditioner needs oracle_scores");
      }
      if (config.oracle_scores && config.oracle_scores->size() != n) {
        throw InvalidArgumentError("oracle_scores has the wrong length");
      }
      for (const LossTerm& term : problem.terms()) {
        double w = term.weight * term.samples;
        switch (config.preconditioner) {
          case Preconditioner::kOracle:
            w *= SigmoidDerivative((*config.oracle_scores)[term.i] -
                                   (*config.oracle_scores)[term.j]);
            w = std::max(w, 1e-300);
            break;
          case Preconditioner::kSurrogate:
            break;
          case Preconditioner::kQuarterSurrogate:
            w *= 0.25;
            break;
        }
        weighted.push_back({term.i, term.j, w});
      }
      preconditioner.emplace(LaplacianOperator::Assemble(n, weighted));
      break;
    }
    case SolverMethod::kProjectedGD:
      break;
  }

  double initial_loss = 0.0;
  for (int t = 0;; ++t) {
    const double loss = Loss(problem, theta);
    const Eigen::VectorXd g = Gradient(problem, theta);
    TraceRecord record{t, loss, g.norm()};
    if (config.reference) record.reference_distance = CenteredDistance(theta, *config.reference);
    trace.records.push_back(record);
    if (t == 0) initial_loss = loss;

    if (record.gradient_norm <= tolerance || loss <= config.stop_loss) {
      trace.converged = true;
      break;
    }
    if (!std::isfinite(loss) || !std::isfinite(record.gradient_norm) ||
        loss > 1e3 * std::max(std::abs(initial_loss), 1.0)) {
      trace.diverged = true;
      break;
    }
    if (t >= max_iterations) break;

    switch (config.method) {
      case SolverMethod::kGradientDescent:
        theta.noalias() -= step * g;
        break;
      case SolverMethod::kCoordinateDescent:
        for (NodeId i = 0; i < n; ++i) theta[i] = MinimizeCoordinate(problem, incident[i], theta, i);
        break;
      case SolverMethod::kPreconditionedGD:
        theta.noalias() -= step * preconditioner->Solve(g);
        break;
      case SolverMethod::kProjectedGD:
        break;
    }
    trace.iterations = t + 1;
  }

  solution.theta = ScoreVector::ZeroSum(std::move(theta));
  return solution;
}

ScoreVector ClosedFormLine(const MleProblem& problem) {
  const ComparisonGraph& graph = problem.graph();
  const int n = graph.num_nodes();
  if (n == 0) return ScoreVector(Eigen::VectorXd(), Gauge::kZeroSum);
  if (!graph.connected() || static_cast<int>(graph.num_edges()) != n - 1 ||
      graph.max_degree() > 2) {
    throw InvalidArgumentError("closed form needs a path graph");
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  if (n == 1) return ScoreVector(theta, Gauge::kZeroSum);

  NodeId start = 0;
  while (graph.degree(start) != 1) ++start;
  std::vector<NodeId> order{start};
  std::vector<int> via;  // via[k]: edge joining order[k] and order[k + 1]
  for (NodeId previous = -1, current = start; static_cast<int>(order.size()) < n;) {
    for (const auto& inc : graph.neighbors(current)) {
      if (inc.neighbor == previous) continue;
      via.push_back(inc.edge);
      order.push_back(inc.neighbor);
      previous = current;
      current = inc.neighbor;
      break;
    }
  }

  for (int k = 0; k + 1 < n; ++k) {
    const NodeId current = order[k];
    const NodeId next = order[k + 1];
    const EdgeOutcome& outcome = problem.data().outcome(via[k]);
    // Fraction of comparisons won by `next` over `current`.
    const double y = outcome.i == next ? outcome.win_rate() : 1.0 - outcome.win_rate();
    if (y <= 0.0 || y >= 1.0) {
      // The side that never wins across this edge has no finite score gap.
      std::vector<NodeId> losers = y <= 0.0 ? std::vector<NodeId>(order.begin() + k + 1, order.end())
                                            : std::vector<NodeId>(order.begin(), order.begin() + k + 1);
      std::sort(losers.begin(), losers.end());
      throw NonexistenceError("win rate " + std::to_string(y) + " on path edge (" +
                                  std::to_string(current) + ", " + std::to_string(next) +
                                  ") has no finite MLE",
                              losers);
    }
    theta[next] = theta[current] + Logit(y);
  }
  return ScoreVector::ZeroSum(std::move(theta));
}

SpectralResult SpectralEstimate(const ComparisonGraph& graph, const ComparisonData& data,
                                const SpectralOptions& options) {
  const int n = graph.num_nodes();
  if (data.size() != graph.num_edges()) throw InvalidArgumentError("data does not match graph");
  if (!graph.connected()) throw InvalidArgumentError("spectral method needs a connected graph");
  const double d = options.d.value_or(1.0 + graph.max_degree());
  if (!(d > 0.0)) throw InvalidArgumentError("spectral parameter d must be positive");

  // Walk leaves i towards j with probability y_ji / d.
  std::vector<double> toward_j(graph.num_edges()), toward_i(graph.num_edges());
  std::vector<double> leaving(n, 0.0);
  std::vector<std::vector<int>> arcs(n);
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const EdgeOutcome& o = data.outcome(e);
    const double y_ij = o.win_rate();
    toward_j[e] = (1.0 - y_ij) / d;
    toward_i[e] = y_ij / d;
    leaving[o.i] += toward_j[e];
    leaving[o.j] += toward_i[e];
    if (toward_j[e] > 0.0) arcs[o.i].push_back(o.j);
    if (toward_i[e] > 0.0) arcs[o.j].push_back(o.i);
  }
  for (int v = 0; v < n; ++v) {
    if (leaving[v] > 1.0 + 1e-12) {
      throw InvalidArgumentError("spectral parameter d is too small: negative diagonal entry");
    }
  }
  if (std::vector<int> closed = ClosedSubset(n, arcs); !closed.empty()) {
    throw InvalidArgumentError("comparison chain is reducible: nodes " + DescribeSet(closed) +
                               " cannot be left");
  }

  SpectralResult result;
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd next(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    next = pi;
    for (std::size_t e = 0; e < graph.num_edges(); ++e) {
      const Edge& edge = graph.edge(e);
      const double flow = pi[edge.i] * toward_j[e] - pi[edge.j] * toward_i[e];
      next[edge.i] -= flow;
      next[edge.j] += flow;
    }
    result.residual = (next - pi).lpNorm<1>();
    result.iterations = it + 1;
    std::swap(pi, next);
    pi /= pi.sum();
    if (result.residual <= options.tolerance) {
      result.converged = true;
      break;
    }
  }

  // next holds the previous iterate: per-entry balance residual.
  int underflow = 0;
  for (int v = 0; v < n; ++v) {
    if (pi[v] < options.underflow_threshold) {
      ++underflow;
      ++result.unresolved_entries;
    } else if (std::abs(pi[v] - next[v]) > options.entry_tolerance * pi[v]) {
      ++result.unresolved_entries;
    }
  }

  Eigen::VectorXd theta = pi.array().log().matrix();
  double finite_sum = 0.0;
  int finite = 0;
  for (int v = 0; v < n; ++v) {
    if (std::isfinite(theta[v])) {
      finite_sum += theta[v];
      ++finite;
    }
  }
  if (finite > 0) theta.array() -= finite_sum / finite;
  result.theta = ScoreVector(theta, finite == n ? Gauge::kZeroSum : Gauge::kRaw);
  result.stationary = std::move(pi);

  std::ostringstream note;
  if (!result.converged) {
    note << "power iteration stopped after " << result.iterations << " iterations at residual "
         << result.residual << ". ";
  }
  if (underflow > 0) {
    note << underflow << " stationary probabilities fell below " << options.underflow_threshold
         << " (log pi is -inf or meaningless there). ";
  }
  if (result.unresolved_entries > underflow) {
    note << (result.unresolved_entries - underflow)
         << " stationary probabilities are too small to be resolved by the iteration. ";
  }
  result.failure_note = note.str();
  result.numerical_failure = !result.converged || result.unresolved_entries > 0;
  return result;
}

}  // namespace btlrank
