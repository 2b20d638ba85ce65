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

#include "btlrank/dc.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "btlrank/error.h"
#include "btlrank/parallel.h"

namespace btlrank {
namespace {

int LocalIndex(const std::vector<NodeId>& subset, NodeId node) {
  auto it = std::lower_bound(subset.begin(), subset.end(), node);
  if (it == subset.end() || *it != node) {
    throw InvalidArgumentError("node " + std::to_string(node) + " is not in the subset");
  }
  return static_cast<int>(it - subset.begin());
}

void RequireConnectedSuperGraph(const SuperGraph& super_graph) {
  if (!super_graph.connected()) {
    throw InvalidArgumentError("the super-graph of the partition is disconnected");
  }
}

SolveResult AlignmentSolve(const LaplacianOperator& super_laplacian, const Eigen::VectorXd& x) {
  SolveOptions options;
  options.tolerance = 1e-13;
  options.max_iterations = 50 * std::max(super_laplacian.size(), 1);
  return SolveOrthogonal(super_laplacian, x, options);
}

// Local data for subset a: a graph on positions 0..|V_a|-1 with the edges of
// E_(a) and their outcomes.
struct LocalProblem {
  ComparisonGraph graph;
  ComparisonData data;
};

LocalProblem BuildLocalProblem(const ComparisonGraph& graph, const ComparisonData& data,
                               const std::vector<NodeId>& subset, const std::vector<int>& edges) {
  std::vector<Edge> local_edges;
  std::vector<EdgeOutcome> local_outcomes;
  local_edges.reserve(edges.size());
  local_outcomes.reserve(edges.size());
  for (int e : edges) {
    const Edge& edge = graph.edge(e);
    const NodeId li = LocalIndex(subset, edge.i);
    const NodeId lj = LocalIndex(subset, edge.j);
    local_edges.push_back({li, lj, edge.samples});
    local_outcomes.push_back({li, lj, data.outcome(e).wins, edge.samples});
  }
  ComparisonGraph local_graph(static_cast<int>(subset.size()), std::move(local_edges));
  ComparisonData local_data(local_graph, std::move(local_outcomes));
  return {std::move(local_graph), std::move(local_data)};
}

Eigen::VectorXd EstimateSubset(const LocalProblem& local, const std::vector<NodeId>& subset,
                               int index, LocalMethod method) {
  const std::string where = "subgraph " + std::to_string(index) + ": ";
  if (!local.graph.connected()) {
    throw NonexistenceError(where + "induced subgraph is disconnected", subset);
  }
  if (method == LocalMethod::kSpectral) {
    SpectralResult spectral = SpectralEstimate(local.graph, local.data);
    if (spectral.theta.gauge() != Gauge::kZeroSum) {
      throw NumericalError(where + "spectral estimate underflowed");
    }
    return spectral.theta.values();
  }
  MleProblem problem(local.graph, local.data);
  ExistenceCheck existence = CheckExistence(problem);
  if (!existence.exists) {
    std::vector<NodeId> global;
    for (NodeId v : existence.violating_set) global.push_back(subset[v]);
    throw NonexistenceError(where + "local MLE does not exist", global);
  }
  SolverConfig config = DefaultSolverConfig(SolverMethod::kPreconditionedGD);
  config.preconditioner = Preconditioner::kQuarterSurrogate;
  config.max_iterations = 5000;
  config.gradient_tolerance = 1e-12 * std::max(problem.total_samples(), 1.0);
  return SolveMle(problem, config).theta.values();
}

struct OverlapEntry {
  int pos_a;
  int pos_b;
  double inverse_membership;
};

std::vector<std::vector<OverlapEntry>> OverlapPositions(const Partition& partition,
                                                        const SuperGraph& super_graph) {
  std::vector<std::vector<OverlapEntry>> result;
  result.reserve(super_graph.edges().size());
  for (const SuperEdge& se : super_graph.edges()) {
    std::vector<OverlapEntry> entries;
    entries.reserve(se.overlap.size());
    for (NodeId i : se.overlap) {
      entries.push_back({LocalIndex(partition.subset(se.a), i), LocalIndex(partition.subset(se.b), i),
                         1.0 / partition.membership(i)});
    }
    result.push_back(std::move(entries));
  }
  return result;
}

Eigen::VectorXd MergeCopies(const Partition& partition, const std::vector<Eigen::VectorXd>& copies,
                            const Eigen::VectorXd& shifts) {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(partition.num_nodes());
  for (int a = 0; a < partition.size(); ++a) {
    const auto& subset = partition.subset(a);
    for (std::size_t k = 0; k < subset.size(); ++k) theta[subset[k]] += copies[a][k] + shifts[a];
  }
  for (NodeId i = 0; i < partition.num_nodes(); ++i) theta[i] /= partition.membership(i);
  return theta;
}

}  // namespace

LocalEstimates EstimateLocally(const ComparisonGraph& graph, const ComparisonData& data,
                               const Partition& partition, LocalMethod method, int workers) {
  if (partition.num_nodes() != graph.num_nodes()) {
    throw InvalidArgumentError("partition and graph disagree on the node count");
  }
  const auto edges = SubgraphEdges(graph, partition);
  LocalEstimates local;
  local.theta.resize(partition.size());
  ParallelFor(
      partition.size(),
      [&](std::size_t a) {
        LocalProblem problem = BuildLocalProblem(graph, data, partition.subset(a), edges[a]);
        local.theta[a] = CenterScores(
            EstimateSubset(problem, partition.subset(a), static_cast<int>(a), method));
      },
      workers);
  return local;
}

AlignmentShifts AlignOverlapping(const Partition& partition, const SuperGraph& super_graph,
                                 const LocalEstimates& local) {
  RequireConnectedSuperGraph(super_graph);
  const int m = partition.size();
  if (static_cast<int>(local.theta.size()) != m) {
    throw InvalidArgumentError("one local estimate per subset is required");
  }
  std::vector<WeightedEdge> weighted;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  const auto positions = OverlapPositions(partition, super_graph);
  for (std::size_t s = 0; s < super_graph.edges().size(); ++s) {
    const SuperEdge& se = super_graph.edges()[s];
    weighted.push_back({se.a, se.b, static_cast<double>(se.overlap.size())});
    for (const OverlapEntry& entry : positions[s]) {
      const double gap = local.theta[se.b][entry.pos_b] - local.theta[se.a][entry.pos_a];
      x[se.a] += gap;
      x[se.b] -= gap;
    }
  }
  AlignmentShifts shifts;
  shifts.super_laplacian = LaplacianOperator::Assemble(m, weighted);
  SolveResult solved = AlignmentSolve(shifts.super_laplacian, x);
  shifts.c = std::move(solved.solution);
  shifts.report = solved.report;
  return shifts;
}

DcResult DcOverlap(const ComparisonGraph& graph, const ComparisonData& data,
                   const Partition& partition, LocalMethod method, int workers) {
  if (partition.mode() != PartitionMode::kOverlapping) {
    throw InvalidArgumentError("DC-overlap needs an overlapping partition");
  }
  SuperGraph super_graph = SuperGraph::Build(graph, partition);
  RequireConnectedSuperGraph(super_graph);
  DcResult result;
  result.local = EstimateLocally(graph, data, partition, method, workers);
  result.alignment = AlignOverlapping(partition, super_graph, result.local);
  result.theta = ScoreVector::ZeroSum(MergeCopies(partition, result.local.theta, result.alignment.c));
  return result;
}

AlignmentTruth ComputeAlignmentTruth(const Partition& partition, const LocalEstimates& local,
                                     const Eigen::VectorXd& theta_star) {
  AlignmentTruth truth;
  truth.c_star.resize(partition.size());
  for (int a = 0; a < partition.size(); ++a) {
    const auto& subset = partition.subset(a);
    Eigen::VectorXd restricted(subset.size());
    for (std::size_t k = 0; k < subset.size(); ++k) restricted[k] = theta_star[subset[k]];
    truth.c_star[a] = restricted.mean();
    truth.local_errors.push_back(local.theta[a] - (restricted.array() - truth.c_star[a]).matrix());
  }
  return truth;
}

double AlignmentErrorIdentityResidual(const Partition& partition, const SuperGraph& super_graph,
                                      std::span<const Eigen::VectorXd> local_errors,
                                      const Eigen::VectorXd& c_star, const Eigen::VectorXd& c) {
  const int m = partition.size();
  std::vector<WeightedEdge> weighted;
  Eigen::VectorXd forcing = Eigen::VectorXd::Zero(m);
  const auto positions = OverlapPositions(partition, super_graph);
  for (std::size_t s = 0; s < super_graph.edges().size(); ++s) {
    const SuperEdge& se = super_graph.edges()[s];
    weighted.push_back({se.a, se.b, static_cast<double>(se.overlap.size())});
    for (const OverlapEntry& entry : positions[s]) {
      const double gap = local_errors[se.b][entry.pos_b] - local_errors[se.a][entry.pos_a];
      forcing[se.a] += gap;
      forcing[se.b] -= gap;
    }
  }
  LaplacianOperator super_laplacian = LaplacianOperator::Assemble(m, weighted);
  Eigen::VectorXd response;
  if (m <= 200) {
    response = DensePseudoInverse(super_laplacian) * forcing;
  } else {
    response = LaplacianFactor(super_laplacian).Solve(forcing);
  }
  Eigen::VectorXd rhs = response.array() - c_star.mean();
  return ((c - c_star) - rhs).cwiseAbs().maxCoeff();
}

std::vector<double> PgdEdgeWeights(const ComparisonGraph& graph, const Partition& partition) {
  std::vector<int> count(graph.num_edges(), 0);
  for (const auto& edges : SubgraphEdges(graph, partition)) {
    for (int e : edges) ++count[e];
  }
  std::vector<double> weights(graph.num_edges());
  for (std::size_t e = 0; e < count.size(); ++e) {
    if (count[e] == 0) {
      throw InvalidArgumentError("edge (" + std::to_string(graph.edge(e).i) + ", " +
                                 std::to_string(graph.edge(e).j) +
                                 ") lies in no subgraph; the subgraph edge sets must cover E");
    }
    weights[e] = 1.0 / count[e];
  }
  return weights;
}

MleSolution PgdSolve(const ComparisonGraph& graph, const ComparisonData& data,
                     const Partition& partition, const PgdOptions& options,
                     const std::optional<Eigen::VectorXd>& initial) {
  const int n = graph.num_nodes();
  if (partition.num_nodes() != n) throw InvalidArgumentError("partition does not match graph");
  if (initial && initial->size() != n) throw InvalidArgumentError("initial point has wrong length");
  const MleProblem full(graph, data);
  if (const ExistenceCheck existence = CheckExistence(full); !existence.exists) {
    throw NonexistenceError("no finite MLE for PGD", existence.violating_set);
  }

  const SuperGraph super_graph = SuperGraph::Build(graph, partition);
  RequireConnectedSuperGraph(super_graph);
  const std::vector<double> weights = PgdEdgeWeights(graph, partition);
  const auto subgraph_edges = SubgraphEdges(graph, partition);
  const int m = partition.size();

  // Weighted local loss terms in subset coordinates.
  std::vector<std::vector<LossTerm>> local_terms(m);
  for (int a = 0; a < m; ++a) {
    for (int e : subgraph_edges[a]) {
      const Edge& edge = graph.edge(e);
      local_terms[a].push_back({LocalIndex(partition.subset(a), edge.i),
                                LocalIndex(partition.subset(a), edge.j), data.outcome(e).wins,
                                static_cast<double>(edge.samples), weights[e]});
    }
  }
  const auto positions = OverlapPositions(partition, super_graph);
  std::vector<WeightedEdge> super_weights;
  for (std::size_t s = 0; s < super_graph.edges().size(); ++s) {
    double w = 0.0;
    for (const OverlapEntry& entry : positions[s]) w += entry.inverse_membership;
    super_weights.push_back({super_graph.edges()[s].a, super_graph.edges()[s].b, w});
  }
  const LaplacianOperator super_laplacian = LaplacianOperator::Assemble(m, super_weights);

  double step = options.step;
  if (step <= 0.0) {
    std::vector<double> degree(n, 0.0);
    for (const LossTerm& term : full.terms()) {
      degree[term.i] += term.samples;
      degree[term.j] += term.samples;
    }
    step = 2.0 / std::max(1.0, *std::max_element(degree.begin(), degree.end()));
  }
  const double tolerance =
      options.gradient_tolerance > 0.0 ? options.gradient_tolerance : 1e-8 * full.total_samples();

  Eigen::VectorXd theta = initial ? *initial : Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> copies(m);
  MleSolution solution;
  ConvergenceTrace& trace = solution.trace;
  double initial_loss = 0.0;
  for (int t = 0;; ++t) {
    const double loss = Loss(full, theta);
    const double gradient_norm = Gradient(full, theta).norm();
    TraceRecord record{t, loss, gradient_norm};
    if (options.reference) {
      Eigen::VectorXd diff = theta - *options.reference;
      diff.array() -= diff.mean();
      record.reference_distance = diff.cwiseAbs().maxCoeff();
    }
    trace.records.push_back(record);
    if (t == 0) initial_loss = loss;
    if (gradient_norm <= tolerance || loss <= options.stop_loss) {
      trace.converged = true;
      break;
    }
    if (!std::isfinite(loss) || loss > 1e3 * std::max(std::abs(initial_loss), 1.0)) {
      trace.diverged = true;
      break;
    }
    if (t >= options.max_iterations) break;

    // One gradient step per subgraph on its weighted loss.
    for (int a = 0; a < m; ++a) {
      const auto& subset = partition.subset(a);
      Eigen::VectorXd& copy = copies[a];
      copy.resize(subset.size());
      for (std::size_t k = 0; k < subset.size(); ++k) copy[k] = theta[subset[k]];
      Eigen::VectorXd g = Eigen::VectorXd::Zero(copy.size());
      for (const LossTerm& term : local_terms[a]) {
        const double d = copy[term.i] - copy[term.j];
        const double v = term.weight * (term.samples * Sigmoid(d) - term.wins);
        g[term.i] += v;
        g[term.j] -= v;
      }
      copy.noalias() -= step * g;
    }

    // Shift-optimal projection back onto consistent copies.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    for (std::size_t s = 0; s < super_graph.edges().size(); ++s) {
      const SuperEdge& se = super_graph.edges()[s];
      for (const OverlapEntry& entry : positions[s]) {
        const double gap =
            entry.inverse_membership * (copies[se.b][entry.pos_b] - copies[se.a][entry.pos_a]);
        x[se.a] += gap;
        x[se.b] -= gap;
      }
    }
    const Eigen::VectorXd shifts = AlignmentSolve(super_laplacian, x).solution;
    theta = MergeCopies(partition, copies, shifts);
    trace.iterations = t + 1;
  }
  solution.theta = ScoreVector::ZeroSum(std::move(theta));
  return solution;
}

double SolveCrossShift(std::span<const CrossTerm> terms) {
  double wins = 0.0, samples = 0.0;
  for (const CrossTerm& term : terms) {
    wins += term.wins;
    samples += term.samples;
  }
  if (terms.empty() || samples <= 0.0) throw InvalidArgumentError("no cross samples");
  if (wins <= 0.0 || wins >= samples) {
    throw NonexistenceError("cross samples are unanimous; the shift difference is infinite", {});
  }
  auto excess = [&](double delta) {
    double f = 0.0;
    for (const CrossTerm& term : terms) {
      f += term.samples * Sigmoid(term.theta_a - term.theta_b + delta) - term.wins;
    }
    return f;
  };
  double lo = -60.0, hi = 60.0;
  if (excess(lo) > 0.0 || excess(hi) < 0.0) {
    throw NonexistenceError("shift difference lies outside [-60, 60]", {});
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CommunityResult DcCommunity(const ComparisonGraph& graph, const ComparisonData& data,
                            const Partition& partition, CommunityWeighting weighting,
                            LocalMethod method, int workers) {
  if (partition.mode() != PartitionMode::kDisjoint) {
    throw InvalidArgumentError("DC-community needs a disjoint partition");
  }
  SuperGraph super_graph = SuperGraph::Build(graph, partition);
  RequireConnectedSuperGraph(super_graph);
  CommunityResult result;
  result.local = EstimateLocally(graph, data, partition, method, workers);

  const auto& super_edges = super_graph.edges();
  result.deltas.assign(super_edges.size(), 0.0);
  ParallelFor(
      super_edges.size(),
      [&](std::size_t s) {
        const SuperEdge& se = super_edges[s];
        std::vector<CrossTerm> terms;
        terms.reserve(se.cross_edges.size());
        for (int e : se.cross_edges) {
          const Edge& edge = graph.edge(e);
          const double wins = data.outcome(e).wins;
          const bool forward = partition.owners(edge.i).front() == se.a;
          const NodeId i = forward ? edge.i : edge.j;
          const NodeId j = forward ? edge.j : edge.i;
          terms.push_back({result.local.theta[se.a][LocalIndex(partition.subset(se.a), i)],
                           result.local.theta[se.b][LocalIndex(partition.subset(se.b), j)],
                           static_cast<double>(edge.samples),
                           forward ? wins : edge.samples - wins});
        }
        try {
          result.deltas[s] = SolveCrossShift(terms);
        } catch (const NonexistenceError& error) {
          throw NonexistenceError("super-edge (" + std::to_string(se.a) + ", " +
                                      std::to_string(se.b) + "): " + error.what(),
                                  partition.subset(se.a));
        }
      },
      workers);

  const int m = partition.size();
  std::vector<WeightedEdge> weighted;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  for (std::size_t s = 0; s < super_edges.size(); ++s) {
    const SuperEdge& se = super_edges[s];
    const double w = weighting == CommunityWeighting::kUnit
                         ? 1.0
                         : static_cast<double>(se.cross_edges.size());
    weighted.push_back({se.a, se.b, w});
    x[se.a] += w * result.deltas[s];
    x[se.b] -= w * result.deltas[s];
  }
  result.alignment.super_laplacian = LaplacianOperator::Assemble(m, weighted);
  SolveResult solved = AlignmentSolve(result.alignment.super_laplacian, x);
  result.alignment.c = std::move(solved.solution);
  result.alignment.report = solved.report;

  Eigen::VectorXd theta(graph.num_nodes());
  for (int a = 0; a < m; ++a) {
    const auto& subset = partition.subset(a);
    for (std::size_t k = 0; k < subset.size(); ++k) {
      theta[subset[k]] = result.local.theta[a][k] + result.alignment.c[a];
    }
  }
  result.theta = ScoreVector::ZeroSum(std::move(theta));
  return result;
}

}  // namespace btlrank
