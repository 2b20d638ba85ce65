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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "btlrank/dc.h"
#include "btlrank/error.h"
#include "btlrank/estimators.h"
#include "btlrank/experiments.h"
#include "btlrank/graph.h"
#include "btlrank/io.h"
#include "btlrank/laplacian.h"
#include "btlrank/metrics.h"
#include "btlrank/model.h"
#include "btlrank/parallel.h"
#include "btlrank/rng.h"

namespace btlrank {
namespace {

// Signals a non-zero exit after a partial success (the output is written).
struct FailureExit {
  std::string note;
};

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BtlError("cannot write " + path);
  return out;
}

template <typename Writer>
void WriteTo(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
  } else {
    auto out = OpenOutput(path);
    write(out);
  }
}

GridKind GridKindFromName(const std::string& name) {
  if (name == "grid1d") return GridKind::k1D;
  if (name == "grid2d") return GridKind::k2D;
  throw InvalidArgumentError("unknown grid kind '" + name + "'");
}

std::vector<NodePair> ParsePairs(const std::string& text, const ComparisonGraph& graph) {
  std::vector<NodePair> pairs;
  if (text == "all") {
    for (NodeId k = 0; k < graph.num_nodes(); ++k) {
      for (NodeId l = k + 1; l < graph.num_nodes(); ++l) pairs.push_back({k, l});
    }
  } else if (text == "edges") {
    for (const Edge& e : graph.edges()) pairs.push_back({e.i, e.j});
  } else {
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string::npos) throw InvalidArgumentError("bad pair '" + item + "'");
      try {
        pairs.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
      } catch (const std::exception&) {
        throw InvalidArgumentError("bad pair '" + item + "'");
      }
    }
  }
  for (const NodePair& p : pairs) {
    if (p.k < 0 || p.l < 0 || p.k >= graph.num_nodes() || p.l >= graph.num_nodes()) {
      throw InvalidArgumentError("pair index out of range");
    }
  }
  return pairs;
}

struct GenerateArgs {
  std::string kind = "grid1d";
  int n = 0;
  int r = 1;
  double p = 1.0;
  int samples = 1;
  std::uint64_t seed = 1;
  int clique_a = 0;
  int clique_b = 0;
  int bridge_samples = 1;
  std::string out;
  std::string partition_out;
  std::string partition_mode = "overlapping";
};

void RunGenerate(const GenerateArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  static const std::map<std::string, SpecialKind> kSpecial = {
      {"er", SpecialKind::kErdosRenyi}, {"line", SpecialKind::kLine},
      {"ring", SpecialKind::kRing},     {"complete", SpecialKind::kComplete},
      {"barbell", SpecialKind::kBarbell}, {"tree", SpecialKind::kTree}};
  if (a.kind == "grid1d" || a.kind == "grid2d") {
    const GridSpec spec{GridKindFromName(a.kind), a.n, a.r, a.p};
    const ComparisonGraph graph = GenerateGrid(spec, a.samples, rng);
    WriteTo(a.out, out, [&](std::ostream& o) { WriteGraphCsv(o, graph); });
    if (!a.partition_out.empty()) {
      if (a.partition_mode != "overlapping" && a.partition_mode != "disjoint") {
        throw InvalidArgumentError("unknown partition mode '" + a.partition_mode + "'");
      }
      const GridPartition partition = PartitionGrid(
          graph, spec,
          a.partition_mode == "overlapping" ? PartitionMode::kOverlapping
                                            : PartitionMode::kDisjoint);
      auto o = OpenOutput(a.partition_out);
      WritePartitionJson(o, partition.partition);
    }
    return;
  }
  const auto it = kSpecial.find(a.kind);
  if (it == kSpecial.end()) throw InvalidArgumentError("unknown graph kind '" + a.kind + "'");
  if (!a.partition_out.empty()) {
    throw InvalidArgumentError("--partition-out is only available for grids");
  }
  SpecialParams params;
  params.n = a.n;
  params.p = a.p;
  params.samples = a.samples;
  params.clique_a = a.clique_a;
  params.clique_b = a.clique_b;
  params.bridge_samples = a.bridge_samples;
  const ComparisonGraph graph = GenerateSpecial(it->second, params, rng);
  WriteTo(a.out, out, [&](std::ostream& o) { WriteGraphCsv(o, graph); });
}

struct SampleArgs {
  std::string graph;
  std::string scores;
  std::string score_kind;
  double r = 1.0;
  std::string layout = "grid1d";
  std::uint64_t seed = 1;
  bool population = false;
  std::string out;
  std::string scores_out;
};

void RunSample(const SampleArgs& a, std::ostream& out) {
  const ComparisonGraph graph = LoadGraph(a.graph);
  Eigen::VectorXd theta;
  if (!a.scores.empty()) {
    theta = LoadScores(a.scores);
  } else if (!a.score_kind.empty()) {
    theta = MakeScores(ParseScoreKind(a.score_kind), graph.num_nodes(), a.r,
                       GridKindFromName(a.layout))
                .values();
  } else {
    throw InvalidArgumentError("give --scores or --score-kind");
  }
  if (theta.size() != graph.num_nodes()) {
    throw InvalidArgumentError("score vector length does not match the graph");
  }
  Rng rng(a.seed);
  const ComparisonData data =
      a.population ? ComparisonData::Population(graph, theta) : SampleComparisons(graph, theta, rng);
  WriteTo(a.out, out, [&](std::ostream& o) { WriteDataCsv(o, data); });
  if (!a.scores_out.empty()) {
    auto o = OpenOutput(a.scores_out);
    WriteScoresJson(o, theta);
  }
}

struct EstimateArgs {
  std::string method;
  std::string graph;
  std::string data;
  std::string out;
  std::string trace;
  std::string partition;
  std::string auto_partition;
  std::string grid = "grid1d";
  int r = 0;
  std::string local = "mle";
  std::string weighting = "cross";
  std::string preconditioner = "quarter";
  std::string oracle_scores;
  double step = 0.0;
  int max_iterations = 0;
  double tolerance = 0.0;
  int workers = 0;
};

Partition ResolvePartition(const EstimateArgs& a, const ComparisonGraph& graph,
                           PartitionMode mode) {
  if (!a.partition.empty()) return LoadPartition(a.partition, graph.num_nodes());
  if (a.auto_partition == "grid") {
    if (a.r < 1) throw InvalidArgumentError("--auto-partition grid needs --r");
    const GridSpec spec{GridKindFromName(a.grid), graph.num_nodes(), a.r, 1.0};
    return PartitionGrid(graph, spec, mode).partition;
  }
  if (!a.auto_partition.empty()) {
    throw InvalidArgumentError("unknown --auto-partition '" + a.auto_partition + "'");
  }
  throw InvalidArgumentError("method " + a.method + " needs --partition or --auto-partition");
}

void RunEstimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const ComparisonGraph graph = LoadGraph(a.graph);
  const ComparisonData data = LoadData(a.data, graph);
  const LocalMethod local = a.local == "spectral" ? LocalMethod::kSpectral : LocalMethod::kMle;
  if (a.local != "mle" && a.local != "spectral") {
    throw InvalidArgumentError("unknown --local '" + a.local + "'");
  }

  std::optional<ScoreVector> theta;
  std::optional<ConvergenceTrace> trace;
  std::string failure;
  if (a.method == "spectral") {
    SpectralResult result = SpectralEstimate(graph, data);
    theta = result.theta;
    if (result.numerical_failure) failure = "spectral method: " + result.failure_note;
  } else if (a.method == "dc-overlap") {
    theta = DcOverlap(graph, data, ResolvePartition(a, graph, PartitionMode::kOverlapping), local,
                      a.workers)
                .theta;
  } else if (a.method == "dc-community") {
    if (a.weighting != "unit" && a.weighting != "cross") {
      throw InvalidArgumentError("unknown --weighting '" + a.weighting + "'");
    }
    theta = DcCommunity(graph, data, ResolvePartition(a, graph, PartitionMode::kDisjoint),
                        a.weighting == "unit" ? CommunityWeighting::kUnit
                                              : CommunityWeighting::kCrossEdgeCount,
                        local, a.workers)
                .theta;
  } else {
    static const std::map<std::string, SolverMethod> kSolvers = {
        {"mle-gd", SolverMethod::kGradientDescent},
        {"mle-cd", SolverMethod::kCoordinateDescent},
        {"mle-precond", SolverMethod::kPreconditionedGD},
        {"mle-pgd", SolverMethod::kProjectedGD}};
    const auto it = kSolvers.find(a.method);
    if (it == kSolvers.end()) throw InvalidArgumentError("unknown method '" + a.method + "'");
    const MleProblem problem(graph, data);
    SolverConfig config = DefaultSolverConfig(it->second);
    config.step = a.step;
    if (a.max_iterations > 0) config.max_iterations = a.max_iterations;
    config.gradient_tolerance = a.tolerance;
    if (a.preconditioner == "oracle") {
      if (a.oracle_scores.empty()) throw InvalidArgumentError("oracle preconditioner needs --scores");
      config.preconditioner = Preconditioner::kOracle;
      config.oracle_scores = LoadScores(a.oracle_scores);
    } else if (a.preconditioner == "surrogate") {
      config.preconditioner = Preconditioner::kSurrogate;
    } else if (a.preconditioner == "quarter") {
      config.preconditioner = Preconditioner::kQuarterSurrogate;
    } else {
      throw InvalidArgumentError("unknown --preconditioner '" + a.preconditioner + "'");
    }
    if (it->second == SolverMethod::kProjectedGD) {
      config.partition = std::make_shared<const Partition>(
          ResolvePartition(a, graph, PartitionMode::kOverlapping));
    }
    MleSolution solution = SolveMle(problem, config);
    theta = solution.theta;
    if (solution.trace.diverged) {
      failure = "solver diverged";
    } else if (!solution.trace.converged) {
      err << "warning: solver stopped at the iteration cap (" << solution.trace.iterations
          << " iterations)\n";
    }
    trace = std::move(solution.trace);
  }

  WriteTo(a.out, out, [&](std::ostream& o) { WriteScoresJson(o, theta->values()); });
  if (!a.trace.empty()) {
    if (!trace) throw InvalidArgumentError("--trace is only available for mle-* methods");
    auto o = OpenOutput(a.trace);
    WriteTraceCsv(o, *trace);
  }
  if (!failure.empty()) throw FailureExit{failure};
}

struct ResistanceArgs {
  std::string graph;
  std::string scores;
  std::string pairs = "all";
  std::string out;
};

void RunResistance(const ResistanceArgs& a, std::ostream& out) {
  const ComparisonGraph graph = LoadGraph(a.graph);
  LaplacianOperator laplacian;
  if (a.scores.empty()) {
    std::vector<WeightedEdge> weighted;
    for (const Edge& e : graph.edges()) weighted.push_back({e.i, e.j, double(e.samples)});
    laplacian = LaplacianOperator::Assemble(graph.num_nodes(), weighted);
  } else {
    laplacian = OracleLaplacian(graph, LoadScores(a.scores));
  }
  if (!laplacian.connected()) throw InvalidArgumentError("graph is disconnected");
  const std::vector<NodePair> pairs = ParsePairs(a.pairs, graph);
  const auto omega = ResistanceMatrix(laplacian, pairs);
  WriteTo(a.out, out, [&](std::ostream& o) { WriteResistanceCsv(o, omega); });
}

struct BoundsArgs {
  std::string graph;
  std::string scores;
  double delta = 0.1;
  double c0 = 1.0;
  std::string pairs;
  std::string out;
};

void RunBounds(const BoundsArgs& a, std::ostream& out, std::ostream& err) {
  const ComparisonGraph graph = LoadGraph(a.graph);
  const Eigen::VectorXd theta = LoadScores(a.scores);
  if (theta.size() != graph.num_nodes()) {
    throw InvalidArgumentError("score vector length does not match the graph");
  }
  const std::vector<NodePair> pairs =
      a.pairs.empty() ? std::vector<NodePair>{} : ParsePairs(a.pairs, graph);
  const BoundQuantities bounds =
      ComputeBoundQuantities(OracleLaplacian(graph, theta), graph,
                             ComputeDynamicRange(graph, theta).kappa_edge, a.delta, a.c0, pairs);
  WriteTo(a.out, out, [&](std::ostream& o) { WriteBoundsCsv(o, bounds); });
  err << "kappa_E = " << FormatDouble(bounds.kappa_edge)
      << ", Q <= 4B on every edge: " << (bounds.small_q_condition ? "yes" : "no") << '\n';
}

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::string out;
  int trials = 0;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  bool full_scale = false;
  std::string grid;
};

void RunExperimentCommand(const ExperimentArgs& a, std::ostream& err) {
  ExperimentConfig config;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw BtlError("cannot open " + a.config);
    config = ParseExperimentConfig(in);
  } else if (!a.name.empty()) {
    config = DefaultExperimentConfig(ParseExperimentId(a.name), a.full_scale);
  } else {
    throw InvalidArgumentError("give --name or --config");
  }
  if (!a.grid.empty()) {
    config.grid = GridKindFromName(a.grid);
    if (config.grid == GridKind::k2D && a.config.empty()) {
      config.n_values = {a.full_scale ? 400 : 256};
      config.r_values = {4};
      config.theory_constant = 6.0;
    }
  }
  if (a.trials > 0) config.trials = a.trials;
  if (a.seed) config.base_seed = *a.seed;
  if (a.workers > 0) config.workers = a.workers;
  if (!a.out.empty()) config.output_dir = a.out;
  if (config.output_dir.empty()) config.output_dir = "results/" + ToString(config.id);
  config.Validate();
  const ExperimentResult result = RunExperiment(config);
  WriteExperimentOutputs(result);
  int failures = 0;
  for (const TrialRecord& record : result.records) {
    for (const MethodOutcome& m : record.methods) failures += m.ok ? 0 : 1;
  }
  err << "wrote " << config.output_dir << " (" << result.records.size() << " trials";
  if (failures > 0) err << ", " << failures << " failed method runs flagged in records.csv";
  err << ")\n";
}

struct TraceArgs {
  std::string grid = "grid1d";
  int n = 200;
  int r = 10;
  double p = 0.8;
  int samples = 100;
  std::string score_kind = "linear";
  std::uint64_t seed = 1;
  int max_iterations = 20000;
  double gap = 1e-6;
  std::vector<std::string> methods;
  std::string out = ".";
};

void RunTrace(const TraceArgs& a, std::ostream& out) {
  const GridSpec spec{GridKindFromName(a.grid), a.n, a.r, a.p};
  const ConvergenceTrial trial = RunConvergenceTrial(
      spec, a.samples, ParseScoreKind(a.score_kind), a.seed, a.max_iterations, a.gap, a.methods);
  ExperimentResult result;
  result.config.id = ExperimentId::kConvergence;
  result.config.output_dir = a.out;
  result.traces = trial.traces;
  TrialRecord record;
  record.score_kind = ParseScoreKind(a.score_kind);
  record.n = a.n;
  record.r = a.r;
  record.p = a.p;
  record.samples = a.samples;
  record.seed = a.seed;
  record.methods = trial.outcomes;
  result.records.push_back(record);
  WriteExperimentOutputs(result);
  out << "method,iterations_to_gap,diverged\n";
  for (const MethodOutcome& m : trial.outcomes) {
    out << m.method << ',' << m.iterations << ',' << (m.diverged ? 1 : 0) << '\n';
  }
}

}  // namespace

int CliMain(int argc, char** argv) { return CliMain(argc, argv, std::cout, std::cerr); }

int CliMain(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bradley-Terry-Luce score estimation on graphs with locality", "btlrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "btlrank 0.1.0");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a comparison graph (and partition)");
  generate->add_option("--kind", gen.kind, "grid1d|grid2d|er|line|ring|complete|barbell|tree")
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Number of nodes")->required();
  generate->add_option("--r", gen.r, "Grid radius")->capture_default_str();
  generate->add_option("--p", gen.p, "Edge probability")->capture_default_str();
  generate->add_option("--L", gen.samples, "Comparisons per edge")->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--clique-a", gen.clique_a, "Barbell left clique size");
  generate->add_option("--clique-b", gen.clique_b, "Barbell right clique size");
  generate->add_option("--bridge-L", gen.bridge_samples, "Barbell bridge comparisons");
  generate->add_option("--out", gen.out, "Graph CSV (stdout if omitted)");
  generate->add_option("--partition-out", gen.partition_out, "Also write the grid partition");
  generate->add_option("--partition-mode", gen.partition_mode, "overlapping|disjoint")
      ->capture_default_str();

  SampleArgs smp;
  auto* sample = app.add_subcommand("sample", "Sample comparison outcomes on a graph");
  sample->add_option("--graph", smp.graph)->required();
  auto* scores_opt = sample->add_option("--scores", smp.scores, "Score JSON");
  sample->add_option("--score-kind", smp.score_kind, "sine|linear")->excludes(scores_opt);
  sample->add_option("--r", smp.r, "Scale of the sine/linear scores")->capture_default_str();
  sample->add_option("--layout", smp.layout, "grid1d|grid2d")->capture_default_str();
  sample->add_option("--seed", smp.seed)->capture_default_str();
  sample->add_flag("--population", smp.population, "Write expected outcomes instead of samples");
  sample->add_option("--out", smp.out, "Data CSV (stdout if omitted)");
  sample->add_option("--scores-out", smp.scores_out, "Write the true scores");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate scores from comparison data");
  estimate
      ->add_option("--method", est.method,
                   "mle-gd|mle-cd|mle-precond|mle-pgd|spectral|dc-overlap|dc-community")
      ->required();
  estimate->add_option("--graph", est.graph)->required();
  estimate->add_option("--data", est.data)->required();
  estimate->add_option("--out", est.out, "Score JSON (stdout if omitted)");
  estimate->add_option("--trace", est.trace, "Trace CSV for mle-* methods");
  estimate->add_option("--partition", est.partition, "Partition JSON");
  estimate->add_option("--auto-partition", est.auto_partition, "grid");
  estimate->add_option("--grid", est.grid, "Grid kind for --auto-partition")
      ->capture_default_str();
  estimate->add_option("--r", est.r, "Grid radius for --auto-partition");
  estimate->add_option("--local", est.local, "Local estimator for dc-*: mle|spectral")
      ->capture_default_str();
  estimate->add_option("--weighting", est.weighting, "dc-community weights: unit|cross")
      ->capture_default_str();
  estimate->add_option("--preconditioner", est.preconditioner, "quarter|surrogate|oracle")
      ->capture_default_str();
  estimate->add_option("--scores", est.oracle_scores, "Scores for the oracle preconditioner");
  estimate->add_option("--step", est.step, "Step size (0: method default)");
  estimate->add_option("--max-iter", est.max_iterations, "Iteration cap (0: method default)");
  estimate->add_option("--tol", est.tolerance, "Gradient-norm tolerance (0: default)");
  estimate->add_option("--workers", est.workers, "Workers for local solves");

  ResistanceArgs res;
  auto* resistance = app.add_subcommand("resistance", "Effective resistances of a graph");
  resistance->add_option("--graph", res.graph)->required();
  resistance->add_option("--scores", res.scores, "Use L_z weights at these scores");
  resistance->add_option("--pairs", res.pairs, "all|edges|k-l,k-l,...")->capture_default_str();
  resistance->add_option("--out", res.out, "Resistance CSV (stdout if omitted)");

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "Per-pair error-bound quantities B, Q, V");
  bounds->add_option("--graph", bnd.graph)->required();
  bounds->add_option("--scores", bnd.scores, "True scores")->required();
  bounds->add_option("--delta", bnd.delta)->capture_default_str();
  bounds->add_option("--c0", bnd.c0)->capture_default_str();
  bounds->add_option("--pairs", bnd.pairs, "all|edges|k-l,... (default: all up to 150 nodes)");
  bounds->add_option("--out", bnd.out, "Bounds CSV (stdout if omitted)");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte-Carlo experiment");
  experiment->add_option("--name", exp.name, "mle-vs-spectral|mle-vs-dcoverlap|convergence");
  experiment->add_option("--config", exp.config, "Experiment config JSON");
  experiment->add_option("--out", exp.out, "Output directory");
  experiment->add_option("--trials", exp.trials);
  experiment->add_option("--seed", exp.seed);
  experiment->add_option("--workers", exp.workers, "Worker threads (default: BTLRANK_WORKERS)");
  experiment->add_option("--grid", exp.grid, "grid1d|grid2d");
  experiment->add_flag("--full-scale", exp.full_scale, "Use the larger sweeps");

  TraceArgs trc;
  auto* trace = app.add_subcommand("trace", "Convergence traces of the MLE solvers");
  trace->add_option("--grid", trc.grid)->capture_default_str();
  trace->add_option("--n", trc.n)->capture_default_str();
  trace->add_option("--r", trc.r)->capture_default_str();
  trace->add_option("--p", trc.p)->capture_default_str();
  trace->add_option("--L", trc.samples)->capture_default_str();
  trace->add_option("--score-kind", trc.score_kind)->capture_default_str();
  trace->add_option("--seed", trc.seed)->capture_default_str();
  trace->add_option("--max-iter", trc.max_iterations)->capture_default_str();
  trace->add_option("--gap", trc.gap, "Loss-gap threshold per sample")->capture_default_str();
  trace->add_option("--methods", trc.methods, "Subset of the convergence methods");
  trace->add_option("--out", trc.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*generate) RunGenerate(gen, out);
    if (*sample) RunSample(smp, out);
    if (*estimate) RunEstimate(est, out, err);
    if (*resistance) RunResistance(res, out);
    if (*bounds) RunBounds(bnd, out, err);
    if (*experiment) RunExperimentCommand(exp, err);
    if (*trace) RunTrace(trc, out);
  } catch (const FailureExit& failure) {
    err << "error: " << failure.note << '\n';
    return kExitFailure;
  } catch (const NonexistenceError& e) {
    err << "error: " << e.what();
    if (!e.violating_set().empty()) {
      err << " (violating set of " << e.violating_set().size() << " nodes, first "
          << e.violating_set().front() << ")";
    }
    err << '\n';
    return kExitFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const BtlError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace btlrank
