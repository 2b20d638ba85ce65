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

#include "btlrank/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "btlrank/dc.h"
#include "btlrank/error.h"
#include "btlrank/io.h"
#include "btlrank/metrics.h"
#include "btlrank/parallel.h"

namespace btlrank {
namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct SweepPoint {
  ScoreKind kind;
  int n;
  int r;
  double p;
  int samples;
};

std::vector<SweepPoint> Points(const ExperimentConfig& config) {
  std::vector<SweepPoint> points;
  for (ScoreKind kind : config.score_kinds) {
    for (int n : config.n_values) {
      for (int r : config.r_values) {
        for (double p : config.p_values) {
          for (int samples : config.sample_values) points.push_back({kind, n, r, p, samples});
        }
      }
    }
  }
  return points;
}

std::vector<std::string> DefaultMethods(ExperimentId id) {
  switch (id) {
    case ExperimentId::kMleVsSpectral:
      return {"mle", "spectral"};
    case ExperimentId::kMleVsDcOverlap:
      return {"mle", "dc-overlap"};
    case ExperimentId::kConvergence:
      return ConvergenceMethods();
  }
  return {};
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / values.size();
}

Eigen::VectorXd Softmax(const Eigen::VectorXd& theta) {
  Eigen::VectorXd pi = (theta.array() - theta.maxCoeff()).exp();
  return pi / pi.sum();
}

double PiRelativeError(const Eigen::VectorXd& pi, const Eigen::VectorXd& pi_star) {
  return (pi - pi_star).cwiseAbs().maxCoeff() / pi_star.cwiseAbs().maxCoeff();
}

void FillErrors(MethodOutcome& outcome, const Eigen::VectorXd& theta,
                const Eigen::VectorXd& theta_star) {
  const PairwiseErrorReport report = ErrorReport(theta, theta_star);
  outcome.linf = report.linf;
  outcome.max_pairwise = report.max_pairwise;
}

struct TrialInstance {
  GridSpec spec;
  ComparisonGraph graph;
  Eigen::VectorXd theta_star;
  ComparisonData data;
};

TrialInstance MakeInstance(const GridSpec& spec, int samples, ScoreKind kind, Rng& rng) {
  Rng graph_rng = rng.Fork(1);
  Rng sample_rng = rng.Fork(2);
  ComparisonGraph graph = GenerateGrid(spec, samples, graph_rng);
  Eigen::VectorXd theta_star = MakeScores(kind, spec.n, spec.radius, spec.kind).values();
  ComparisonData data = SampleComparisons(graph, theta_star, sample_rng);
  return {spec, std::move(graph), std::move(theta_star), std::move(data)};
}

MleSolution ReferenceMle(const MleProblem& problem, double tolerance_factor) {
  SolverConfig config = DefaultSolverConfig(SolverMethod::kPreconditionedGD);
  config.preconditioner = Preconditioner::kQuarterSurrogate;
  config.max_iterations = 5000;
  config.gradient_tolerance = tolerance_factor * problem.total_samples();
  return SolveMle(problem, config);
}

MethodOutcome RunErrorMethod(const std::string& method, const TrialInstance& instance) {
  MethodOutcome outcome;
  outcome.method = method;
  const Eigen::VectorXd pi_star = Softmax(instance.theta_star);
  if (method == "mle") {
    MleProblem problem(instance.graph, instance.data);
    const MleSolution solution = ReferenceMle(problem, 1e-10);
    FillErrors(outcome, solution.theta.values(), instance.theta_star);
    outcome.pi_relative_error = PiRelativeError(Softmax(solution.theta.values()), pi_star);
    outcome.iterations = solution.trace.iterations;
    if (!solution.trace.converged) {
      outcome.ok = false;
      outcome.note = "MLE solver hit its iteration cap";
    }
  } else if (method == "spectral") {
    const SpectralResult spectral = SpectralEstimate(instance.graph, instance.data);
    outcome.iterations = spectral.iterations;
    outcome.pi_relative_error = PiRelativeError(spectral.stationary, pi_star);
    if (spectral.theta.gauge() == Gauge::kZeroSum) {
      FillErrors(outcome, spectral.theta.values(), instance.theta_star);
    } else {
      outcome.linf = std::numeric_limits<double>::infinity();
      outcome.max_pairwise = std::numeric_limits<double>::infinity();
    }
    if (spectral.numerical_failure) {
      outcome.ok = false;
      outcome.note = spectral.failure_note;
    }
  } else if (method == "dc-overlap" || method == "dc-community") {
    const PartitionMode mode =
        method == "dc-overlap" ? PartitionMode::kOverlapping : PartitionMode::kDisjoint;
    const GridPartition grid = PartitionGrid(instance.graph, instance.spec, mode);
    const ScoreVector theta =
        mode == PartitionMode::kOverlapping
            ? DcOverlap(instance.graph, instance.data, grid.partition, LocalMethod::kMle, 1).theta
            : DcCommunity(instance.graph, instance.data, grid.partition,
                          CommunityWeighting::kCrossEdgeCount, LocalMethod::kMle, 1)
                  .theta;
    FillErrors(outcome, theta.values(), instance.theta_star);
    outcome.pi_relative_error = PiRelativeError(Softmax(theta.values()), pi_star);
  } else if (method == "pgd") {
    const GridPartition grid =
        PartitionGrid(instance.graph, instance.spec, PartitionMode::kOverlapping);
    PgdOptions options;
    options.max_iterations = 20000;
    const MleSolution solution = PgdSolve(instance.graph, instance.data, grid.partition, options);
    FillErrors(outcome, solution.theta.values(), instance.theta_star);
    outcome.pi_relative_error = PiRelativeError(Softmax(solution.theta.values()), pi_star);
    outcome.iterations = solution.trace.iterations;
    outcome.diverged = solution.trace.diverged;
    if (!solution.trace.converged) {
      outcome.ok = false;
      outcome.note = "PGD did not converge";
    }
  } else {
    throw InvalidArgumentError("unknown method '" + method + "' for this experiment");
  }
  return outcome;
}

int IterationsToThreshold(const ConvergenceTrace& trace, double threshold) {
  for (const TraceRecord& record : trace.records) {
    if (record.loss <= threshold) return record.iteration;
  }
  return -1;
}

const char* kMethodColumns =
    "method,ok,linf,max_pairwise,pi_rel_error,iterations,diverged";

std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string PointColumns(const TrialRecord& record) {
  std::ostringstream out;
  out << record.point << ',' << ToString(record.score_kind) << ',' << record.n << ','
      << record.r << ',' << FormatDouble(record.p) << ',' << record.samples;
  return out.str();
}

}  // namespace

std::string ToString(ExperimentId id) {
  switch (id) {
    case ExperimentId::kMleVsSpectral:
      return "mle-vs-spectral";
    case ExperimentId::kMleVsDcOverlap:
      return "mle-vs-dcoverlap";
    case ExperimentId::kConvergence:
      return "convergence";
  }
  return "";
}

ExperimentId ParseExperimentId(const std::string& name) {
  for (ExperimentId id : {ExperimentId::kMleVsSpectral, ExperimentId::kMleVsDcOverlap,
                          ExperimentId::kConvergence}) {
    if (ToString(id) == name) return id;
  }
  throw InvalidArgumentError("unknown experiment '" + name + "'");
}

std::string ToString(ScoreKind kind) { return kind == ScoreKind::kSine ? "sine" : "linear"; }

ScoreKind ParseScoreKind(const std::string& name) {
  if (name == "sine") return ScoreKind::kSine;
  if (name == "linear") return ScoreKind::kLinear;
  throw InvalidArgumentError("unknown score kind '" + name + "'");
}

void ExperimentConfig::Validate() const {
  if (trials < 1) throw InvalidArgumentError("trials must be >= 1");
  if (n_values.empty() || r_values.empty() || p_values.empty() || sample_values.empty() ||
      score_kinds.empty()) {
    throw InvalidArgumentError("every sweep list must be non-empty");
  }
  for (int n : n_values) {
    for (int r : r_values) {
      for (double p : p_values) GridSpec{grid, n, r, p}.Validate();
    }
  }
  for (int samples : sample_values) {
    if (samples < 1) throw InvalidArgumentError("L must be >= 1");
  }
  if (max_iterations < 1) throw InvalidArgumentError("max_iterations must be >= 1");
  const auto known = DefaultMethods(id);
  std::vector<std::string> allowed = known;
  if (id != ExperimentId::kConvergence) {
    allowed = {"mle", "spectral", "dc-overlap", "dc-community", "pgd"};
  }
  for (const std::string& method : methods) {
    if (std::find(allowed.begin(), allowed.end(), method) == allowed.end()) {
      throw InvalidArgumentError("method '" + method + "' is not available in " + ToString(id));
    }
  }
}

ExperimentConfig DefaultExperimentConfig(ExperimentId id, bool full_scale) {
  ExperimentConfig config;
  config.id = id;
  config.grid = GridKind::k1D;
  config.base_seed = 20240601;
  switch (id) {
    case ExperimentId::kMleVsSpectral:
      config.n_values = full_scale ? std::vector<int>{60, 120, 240, 360, 480, 600, 780}
                                   : std::vector<int>{60, 120, 240};
      config.r_values = {10};
      config.p_values = {0.8};
      config.sample_values = {100};
      config.score_kinds = {ScoreKind::kSine, ScoreKind::kLinear};
      config.trials = full_scale ? 40 : 20;
      break;
    case ExperimentId::kMleVsDcOverlap:
      config.n_values = {full_scale ? 500 : 256};
      config.r_values = {full_scale ? 20 : 16};
      config.p_values = {0.5};
      config.sample_values = {10, 30, 100};
      config.score_kinds = {ScoreKind::kLinear};
      config.trials = full_scale ? 30 : 20;
      config.theory_constant = 5.0;
      break;
    case ExperimentId::kConvergence:
      config.n_values = {full_scale ? 400 : 200};
      config.r_values = {10};
      config.p_values = {0.8};
      config.sample_values = {100};
      config.score_kinds = {ScoreKind::kLinear};
      config.trials = 5;
      config.max_iterations = 20000;
      break;
  }
  return config;
}

ExperimentConfig ParseExperimentConfig(std::istream& in) {
  Json json;
  try {
    in >> json;
  } catch (const Json::exception& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  if (!json.is_object()) throw InvalidArgumentError("config: expected a JSON object");
  if (!json.contains("experiment")) throw InvalidArgumentError("config: missing 'experiment'");
  ExperimentConfig config =
      DefaultExperimentConfig(ParseExperimentId(json["experiment"].get<std::string>()),
                              json.value("full_scale", false));
  try {
    if (json.contains("grid")) {
      const std::string grid = json["grid"].get<std::string>();
      if (grid == "grid1d") {
        config.grid = GridKind::k1D;
      } else if (grid == "grid2d") {
        config.grid = GridKind::k2D;
      } else {
        throw InvalidArgumentError("config: unknown grid '" + grid + "'");
      }
    }
    if (json.contains("n")) config.n_values = json["n"].get<std::vector<int>>();
    if (json.contains("r")) config.r_values = json["r"].get<std::vector<int>>();
    if (json.contains("p")) config.p_values = json["p"].get<std::vector<double>>();
    if (json.contains("L")) config.sample_values = json["L"].get<std::vector<int>>();
    if (json.contains("scores")) {
      config.score_kinds.clear();
      for (const auto& name : json["scores"].get<std::vector<std::string>>()) {
        config.score_kinds.push_back(ParseScoreKind(name));
      }
    }
    if (json.contains("trials")) config.trials = json["trials"].get<int>();
    if (json.contains("seed")) config.base_seed = json["seed"].get<std::uint64_t>();
    if (json.contains("methods")) config.methods = json["methods"].get<std::vector<std::string>>();
    if (json.contains("output_dir")) config.output_dir = json["output_dir"].get<std::string>();
    if (json.contains("workers")) config.workers = json["workers"].get<int>();
    if (json.contains("max_iterations")) config.max_iterations = json["max_iterations"].get<int>();
    if (json.contains("theory_constant")) {
      config.theory_constant = json["theory_constant"].get<double>();
    }
  } catch (const Json::exception& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  config.Validate();
  return config;
}

void WriteExperimentConfig(std::ostream& out, const ExperimentConfig& config) {
  Json scores = Json::array();
  for (ScoreKind kind : config.score_kinds) scores.push_back(ToString(kind));
  Json json = {{"experiment", ToString(config.id)},
               {"grid", config.grid == GridKind::k1D ? "grid1d" : "grid2d"},
               {"n", config.n_values},
               {"r", config.r_values},
               {"p", config.p_values},
               {"L", config.sample_values},
               {"scores", scores},
               {"trials", config.trials},
               {"seed", config.base_seed},
               {"methods", config.methods},
               {"output_dir", config.output_dir},
               {"workers", config.workers},
               {"max_iterations", config.max_iterations},
               {"theory_constant", config.theory_constant}};
  out << json.dump(2) << '\n';
}

std::uint64_t TrialSeed(std::uint64_t base_seed, int trial) {
  return base_seed ^ static_cast<std::uint64_t>(trial);
}

std::vector<std::string> ConvergenceMethods() {
  return {"precond-oracle", "precond-surrogate", "pgd", "cd", "gd-small", "gd-large"};
}

ConvergenceTrial RunConvergenceTrial(const GridSpec& spec, int samples, ScoreKind kind,
                                     std::uint64_t seed, int max_iterations, double gap_factor,
                                     const std::vector<std::string>& methods) {
  spec.Validate();
  Rng rng(seed);
  const TrialInstance instance = MakeInstance(spec, samples, kind, rng);
  const MleProblem problem(instance.graph, instance.data);
  if (const ExistenceCheck existence = CheckExistence(problem); !existence.exists) {
    throw NonexistenceError("sampled data admit no finite MLE", existence.violating_set);
  }
  const MleSolution reference = ReferenceMle(problem, 1e-11);

  ConvergenceTrial trial;
  trial.reference_loss = Loss(problem, reference.theta.values());
  trial.threshold = trial.reference_loss + gap_factor * problem.total_samples();

  const double r = spec.radius;
  const double eta_small = spec.kind == GridKind::k1D ? 1.0 / (r * spec.p * samples)
                                                      : 1.0 / (r * r * spec.p * samples);
  const std::vector<std::string> selected = methods.empty() ? ConvergenceMethods() : methods;
  for (const std::string& method : selected) {
    SolverConfig config;
    config.max_iterations = max_iterations;
    config.gradient_tolerance = 1e-14 * problem.total_samples();
    config.reference = reference.theta.values();
    config.stop_loss = trial.threshold;
    if (method == "precond-oracle" || method == "precond-surrogate") {
      config.method = SolverMethod::kPreconditionedGD;
      config.step = 1.0;
      if (method == "precond-oracle") {
        config.preconditioner = Preconditioner::kOracle;
        config.oracle_scores = instance.theta_star;
      } else {
        config.preconditioner = Preconditioner::kQuarterSurrogate;
      }
    } else if (method == "pgd") {
      config.method = SolverMethod::kProjectedGD;
      config.partition = std::make_shared<const Partition>(
          PartitionGrid(instance.graph, spec, PartitionMode::kOverlapping).partition);
    } else if (method == "cd") {
      config.method = SolverMethod::kCoordinateDescent;
    } else if (method == "gd-small" || method == "gd-large") {
      config.method = SolverMethod::kGradientDescent;
      config.step = method == "gd-small" ? eta_small : 5.0 * eta_small;
    } else {
      throw InvalidArgumentError("unknown convergence method '" + method + "'");
    }
    const auto start = Clock::now();
    MleSolution solution = SolveMle(problem, config);
    MethodOutcome outcome;
    outcome.method = method;
    outcome.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    outcome.iterations = IterationsToThreshold(solution.trace, trial.threshold);
    outcome.diverged = solution.trace.diverged;
    FillErrors(outcome, solution.theta.values(), instance.theta_star);
    if (outcome.iterations < 0 && !outcome.diverged) outcome.note = "iteration cap reached";
    if (outcome.diverged) outcome.note = "diverged";
    trial.outcomes.push_back(outcome);
    trial.traces.push_back({method, 0, std::move(solution.trace), trial.reference_loss});
  }
  return trial;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::vector<SweepPoint> points = Points(config);
  const std::vector<std::string> methods =
      config.methods.empty() ? DefaultMethods(config.id) : config.methods;
  const std::size_t tasks = points.size() * config.trials;

  ExperimentResult result;
  result.config = config;
  result.records.resize(tasks);
  std::vector<std::vector<MethodTrace>> traces(tasks);

  ParallelFor(
      tasks,
      [&](std::size_t task) {
        const int point = static_cast<int>(task / config.trials);
        const int trial = static_cast<int>(task % config.trials);
        const SweepPoint& sweep = points[point];
        TrialRecord& record = result.records[task];
        record.point = point;
        record.score_kind = sweep.kind;
        record.n = sweep.n;
        record.r = sweep.r;
        record.p = sweep.p;
        record.samples = sweep.samples;
        record.trial = trial;
        record.seed = TrialSeed(config.base_seed, trial);
        const GridSpec spec{config.grid, sweep.n, sweep.r, sweep.p};
        if (config.id == ExperimentId::kMleVsDcOverlap) {
          record.theory_bound = LocalityBound(config.grid, sweep.n, sweep.r, sweep.p,
                                              sweep.samples, config.theory_constant);
        }

        if (config.id == ExperimentId::kConvergence) {
          try {
            ConvergenceTrial run =
                RunConvergenceTrial(spec, sweep.samples, sweep.kind,
                                    SplitMix64(record.seed) ^ static_cast<std::uint64_t>(point),
                                    config.max_iterations, 1e-6, methods);
            record.methods = std::move(run.outcomes);
            for (MethodTrace& trace : run.traces) {
              trace.trial = trial;
              traces[task].push_back(std::move(trace));
            }
          } catch (const BtlError& error) {
            for (const std::string& method : methods) {
              record.methods.push_back({method, false, error.what()});
            }
          }
          return;
        }

        Rng rng(record.seed, static_cast<std::uint64_t>(point));
        std::optional<TrialInstance> instance;
        std::string failure;
        try {
          instance = MakeInstance(spec, sweep.samples, sweep.kind, rng);
        } catch (const BtlError& error) {
          failure = error.what();
        }
        for (const std::string& method : methods) {
          if (!instance) {
            record.methods.push_back({method, false, failure});
            continue;
          }
          const auto start = Clock::now();
          MethodOutcome outcome;
          try {
            outcome = RunErrorMethod(method, *instance);
          } catch (const BtlError& error) {
            outcome = MethodOutcome{method, false, error.what()};
          }
          outcome.wall_ms =
              std::chrono::duration<double, std::milli>(Clock::now() - start).count();
          record.methods.push_back(std::move(outcome));
        }
      },
      config.workers);

  for (std::size_t task = 0; task < tasks; ++task) {
    for (const MethodOutcome& outcome : result.records[task].methods) {
      if (!outcome.ok) result.any_failure = true;
    }
    for (MethodTrace& trace : traces[task]) result.traces.push_back(std::move(trace));
  }
  return result;
}

void WriteRecordsCsv(std::ostream& out, const ExperimentResult& result) {
  out << "point,score_kind,n,r,p,L,trial,seed," << kMethodColumns << ",theory_bound,note\n";
  for (const TrialRecord& record : result.records) {
    for (const MethodOutcome& m : record.methods) {
      out << PointColumns(record) << ',' << record.trial << ',' << record.seed << ','
          << m.method << ',' << (m.ok ? 1 : 0) << ',' << FormatDouble(m.linf) << ','
          << FormatDouble(m.max_pairwise) << ',' << FormatDouble(m.pi_relative_error) << ','
          << m.iterations << ',' << (m.diverged ? 1 : 0) << ','
          << FormatDouble(record.theory_bound) << ',' << Field(m.note) << '\n';
    }
  }
}

void WriteSummaryCsv(std::ostream& out, const ExperimentResult& result) {
  out << "point,score_kind,n,r,p,L,method,trials,failures,mean_linf,median_linf,"
         "mean_max_pairwise,mean_pi_rel_error,median_iterations,diverged,theory_bound,"
         "within_bound\n";
  // Records are ordered by point, then trial; methods keep their order.
  std::size_t begin = 0;
  const auto& records = result.records;
  while (begin < records.size()) {
    std::size_t end = begin;
    while (end < records.size() && records[end].point == records[begin].point) ++end;
    std::vector<std::string> order;
    std::map<std::string, std::vector<const MethodOutcome*>> by_method;
    for (std::size_t k = begin; k < end; ++k) {
      for (const MethodOutcome& m : records[k].methods) {
        if (!by_method.count(m.method)) order.push_back(m.method);
        by_method[m.method].push_back(&m);
      }
    }
    const TrialRecord& first = records[begin];
    for (const std::string& method : order) {
      const auto& outcomes = by_method[method];
      std::vector<double> linf, pairwise, pi, iterations;
      int failures = 0, diverged = 0, within = 0;
      for (const MethodOutcome* m : outcomes) {
        if (!m->ok) ++failures;
        if (m->diverged) ++diverged;
        if (!std::isnan(m->linf)) linf.push_back(m->linf);
        if (!std::isnan(m->max_pairwise)) pairwise.push_back(m->max_pairwise);
        if (!std::isnan(m->pi_relative_error)) pi.push_back(m->pi_relative_error);
        iterations.push_back(m->iterations < 0 ? std::numeric_limits<double>::infinity()
                                               : m->iterations);
        if (m->linf <= first.theory_bound) ++within;
      }
      out << PointColumns(first) << ',' << method << ',' << outcomes.size() << ',' << failures
          << ',' << FormatDouble(Mean(linf)) << ',' << FormatDouble(Median(linf)) << ','
          << FormatDouble(Mean(pairwise)) << ',' << FormatDouble(Mean(pi)) << ','
          << FormatDouble(Median(iterations)) << ',' << diverged << ','
          << FormatDouble(first.theory_bound) << ','
          << (std::isnan(first.theory_bound)
                  ? std::string("nan")
                  : FormatDouble(static_cast<double>(within) / outcomes.size()))
          << '\n';
    }
    begin = end;
  }
}

void WriteExperimentOutputs(const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir = result.config.output_dir.empty() ? fs::path(".") : fs::path(result.config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw BtlError("cannot create " + dir.string() + ": " + ec.message());
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) throw BtlError("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("records.csv");
    WriteRecordsCsv(out, result);
  }
  {
    auto out = open("summary.csv");
    WriteSummaryCsv(out, result);
  }
  {
    auto out = open("timing.csv");
    out << "point,trial,method,wall_ms\n";
    for (const TrialRecord& record : result.records) {
      for (const MethodOutcome& m : record.methods) {
        out << record.point << ',' << record.trial << ',' << m.method << ','
            << FormatDouble(m.wall_ms) << '\n';
      }
    }
  }
  {
    auto out = open("config.json");
    WriteExperimentConfig(out, result.config);
  }
  if (result.config.id != ExperimentId::kConvergence) return;
  std::map<std::string, std::vector<const MethodTrace*>> by_method;
  for (const MethodTrace& trace : result.traces) by_method[trace.method].push_back(&trace);
  for (const auto& [method, traces] : by_method) {
    auto out = open("trace_" + method + ".csv");
    out << "trial,iteration,loss,loss_gap,grad_norm,linf_to_reference\n";
    for (const MethodTrace* trace : traces) {
      for (const TraceRecord& r : trace->trace.records) {
        out << trace->trial << ',' << r.iteration << ',' << FormatDouble(r.loss) << ','
            << FormatDouble(r.loss - trace->reference_loss) << ','
            << FormatDouble(r.gradient_norm) << ','
            << (std::isnan(r.reference_distance) ? "" : FormatDouble(r.reference_distance))
            << '\n';
      }
    }
  }
}

}  // namespace btlrank
