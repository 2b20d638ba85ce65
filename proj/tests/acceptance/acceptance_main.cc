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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "btlrank/dc.h"
#include "btlrank/error.h"
#include "btlrank/estimators.h"
#include "btlrank/experiments.h"
#include "btlrank/laplacian.h"
#include "btlrank/metrics.h"
#include "support/test_support.h"

namespace btlrank {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      Note(what);
    }
  }
  void Note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Outcome ResistanceLaws() {
  Outcome out;
  const std::vector<WeightedEdge> series{{0, 1, 1.0}, {1, 2, 0.5}, {2, 3, 1.0 / 3.0}};
  const double chain = EffectiveResistance(LaplacianOperator::Assemble(4, series), 0, 3);
  out.Require(std::abs(chain - 6.0) <= 1e-10, Fmt("series %.12g", chain));
  const std::vector<WeightedEdge> parallel{{0, 1, 1.0}, {0, 1, 3.0}};
  const double both = EffectiveResistance(LaplacianOperator::Assemble(2, parallel), 0, 1);
  out.Require(std::abs(both - 0.25) <= 1e-10, Fmt("parallel %.12g", both));

  Rng rng(101);
  const int n = 8;
  double worst_oracle = 0.0, worst_triangle = 0.0, worst_monotone = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto edges = testing::RandomWeightedEdges(n, 0.35, rng);
    const auto omega = ResistanceMatrix(LaplacianOperator::Assemble(n, edges));
    const Eigen::MatrixXd pinv = oracle::PseudoInverse(oracle::DenseLaplacian(n, testing::ToDense(edges)));
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [pair, value] : omega) {
      r(pair.k, pair.l) = r(pair.l, pair.k) = value;
      worst_oracle = std::max(worst_oracle, std::abs(value - oracle::Resistance(pinv, pair.k, pair.l)));
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) worst_triangle = std::max(worst_triangle, r(a, b) - r(a, c) - r(c, b));
      }
    }
    edges[rng.UniformInt(edges.size())].weight *= 0.5;
    const auto lighter = ResistanceMatrix(LaplacianOperator::Assemble(n, edges));
    for (const auto& [pair, value] : omega) {
      worst_monotone = std::max(worst_monotone, value - lighter.at(pair));
    }
  }
  out.Require(worst_oracle <= 1e-8, Fmt("oracle gap %.3g", worst_oracle));
  out.Require(worst_triangle <= 1e-8, Fmt("triangle violation %.3g", worst_triangle));
  out.Require(worst_monotone <= 1e-8, Fmt("monotonicity violation %.3g", worst_monotone));
  return out;
}

Outcome GradientAndHessian() {
  Outcome out;
  Rng rng(202);
  double worst_gradient = 0.0, worst_hessian = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.UniformInt(8));
    const ComparisonGraph g = testing::RandomConnectedGraph(n, 0.4, 12, rng);
    const ComparisonData d = testing::RandomInteriorData(g, rng);
    const MleProblem problem(g, d);
    Eigen::VectorXd theta(n);
    for (int i = 0; i < n; ++i) theta[i] = 2.0 * rng.Uniform() - 1.0;
    const auto dense = testing::ToDense(d);
    const Eigen::VectorXd fd = oracle::FiniteDifferenceGradient(
        [&](const Eigen::VectorXd& x) { return oracle::Loss(dense, x); }, theta);
    const Eigen::VectorXd grad = Gradient(problem, theta);
    worst_gradient = std::max(worst_gradient, (grad - fd).norm() / std::max(1.0, fd.norm()));
    const Eigen::MatrixXd h = Hessian(problem, theta).ToDense();
    const Eigen::MatrixXd lz = OracleLaplacian(g, theta).ToDense();
    worst_hessian = std::max(worst_hessian, (h - lz).cwiseAbs().maxCoeff());
  }
  out.Require(worst_gradient <= 1e-6, Fmt("gradient relative gap %.3g", worst_gradient));
  out.Require(worst_hessian <= 1e-12, Fmt("hessian gap %.3g", worst_hessian));
  out.Note(Fmt("gradient gap %.2g, hessian gap %.2g", worst_gradient, worst_hessian));
  return out;
}

Outcome LineClosedForm() {
  Outcome out;
  Rng rng(303);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(19));
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 2 + static_cast<int>(rng.UniformInt(30))});
    const ComparisonGraph g(n, edges);
    const MleProblem problem(g, testing::RandomInteriorData(g, rng));
    SolverConfig config = DefaultSolverConfig(SolverMethod::kPreconditionedGD);
    config.gradient_tolerance = 1e-12 * static_cast<double>(g.total_samples());
    const MleSolution mle = SolveMle(problem, config);
    const ScoreVector closed = ClosedFormLine(problem);
    worst = std::max(worst, (mle.theta.values() - closed.values()).cwiseAbs().maxCoeff());
  }
  out.Require(worst <= 1e-8, Fmt("linf gap %.3g", worst));
  out.Note(Fmt("max linf gap %.2g", worst));
  return out;
}

Outcome SolverAgreement() {
  Outcome out;
  Rng rng(404);
  const GridSpec spec{GridKind::k1D, 100, 5, 0.8};
  const ComparisonGraph g = GenerateGrid(spec, 50, rng);
  const Eigen::VectorXd theta_star = MakeScores(ScoreKind::kLinear, 100, 5).values();
  const MleProblem problem(g, SampleComparisons(g, theta_star, rng));
  const double tolerance = 1e-11 * static_cast<double>(g.total_samples());
  auto solve = [&](SolverMethod method, Preconditioner pre) {
    SolverConfig config = DefaultSolverConfig(method);
    config.gradient_tolerance = tolerance;
    config.preconditioner = pre;
    config.oracle_scores = theta_star;
    config.max_iterations = 1000000;
    if (method == SolverMethod::kProjectedGD) {
      config.partition = std::make_shared<Partition>(
          PartitionGrid(g, spec, PartitionMode::kOverlapping).partition);
    }
    return SolveMle(problem, config);
  };
  const MleSolution reference = solve(SolverMethod::kPreconditionedGD, Preconditioner::kQuarterSurrogate);
  const std::vector<std::pair<std::string, MleSolution>> others{
      {"gd", solve(SolverMethod::kGradientDescent, Preconditioner::kQuarterSurrogate)},
      {"cd", solve(SolverMethod::kCoordinateDescent, Preconditioner::kQuarterSurrogate)},
      {"precond-oracle", solve(SolverMethod::kPreconditionedGD, Preconditioner::kOracle)},
      {"precond-surrogate", solve(SolverMethod::kPreconditionedGD, Preconditioner::kSurrogate)},
      {"pgd", solve(SolverMethod::kProjectedGD, Preconditioner::kQuarterSurrogate)},
  };
  double worst = 0.0;
  for (const auto& [name, sol] : others) {
    const double gap = testing::MaxPairwiseGap(sol.theta.values(), reference.theta.values());
    worst = std::max(worst, gap);
    out.Require(sol.trace.converged, name + " did not converge");
    out.Require(gap <= 1e-5, name + Fmt(" gap %.3g", gap));
  }
  out.Note(Fmt("max pairwise gap %.2g", worst));
  return out;
}

Outcome ConvergenceOrdering() {
  Outcome out;
  const GridSpec spec{GridKind::k1D, 200, 10, 0.8};
  std::map<std::string, std::vector<double>> iterations;
  bool large_step_fails = true;
  for (int trial = 0; trial < 5; ++trial) {
    const ConvergenceTrial result =
        RunConvergenceTrial(spec, 100, ScoreKind::kLinear, TrialSeed(20240601, trial), 20000);
    for (const MethodOutcome& m : result.outcomes) {
      const double count = m.iterations < 0 || m.diverged ? std::numeric_limits<double>::infinity()
                                                          : static_cast<double>(m.iterations);
      iterations[m.method].push_back(count);
      if (m.method == "gd-large" && !(m.diverged || m.iterations < 0)) large_step_fails = false;
    }
  }
  const double oracle = Median(iterations["precond-oracle"]);
  const double surrogate = Median(iterations["precond-surrogate"]);
  const double pgd = Median(iterations["pgd"]);
  const double gd = Median(iterations["gd-small"]);
  out.Require(oracle <= surrogate, "precond-oracle > precond-surrogate");
  out.Require(surrogate < pgd, "precond-surrogate >= pgd");
  out.Require(pgd < gd, "pgd >= gd-small");
  out.Require(large_step_fails, "gd-large reached the threshold");
  out.Note(Fmt("medians oracle %g, surrogate %g, pgd %g", oracle, surrogate, pgd) +
                Fmt(", gd-small %g, cd %g", gd, Median(iterations["cd"])));
  return out;
}

// Per-(score kind, n) trial errors of one method.
std::map<std::pair<ScoreKind, int>, std::vector<double>> ErrorsBy(const ExperimentResult& result,
                                                                  const std::string& method) {
  std::map<std::pair<ScoreKind, int>, std::vector<double>> errors;
  for (const TrialRecord& record : result.records) {
    for (const MethodOutcome& m : record.methods) {
      if (m.method != method) continue;
      errors[{record.score_kind, record.n * 1000 + record.samples}].push_back(
          m.ok ? m.linf : std::numeric_limits<double>::infinity());
    }
  }
  return errors;
}

Outcome SpectralFailure() {
  Outcome out;
  const ExperimentResult result = RunExperiment(DefaultExperimentConfig(ExperimentId::kMleVsSpectral));
  const auto mle = ErrorsBy(result, "mle");
  const auto spectral = ErrorsBy(result, "spectral");
  const std::vector<int> ns{60, 120, 240};
  double previous = -1.0;
  for (int n : ns) {
    const std::pair<ScoreKind, int> linear{ScoreKind::kLinear, n * 1000 + 100};
    const double worst_mle = *std::max_element(mle.at(linear).begin(), mle.at(linear).end());
    const double mean_mle = Mean(mle.at(linear));
    const double mean_spectral = Mean(spectral.at(linear));
    out.Require(worst_mle < 0.5, Fmt("n=%g mle max linf %.3f", n, worst_mle));
    out.Require(mean_spectral > previous, Fmt("spectral mean not increasing at n=%g", n));
    previous = mean_spectral;
    if (n == 240) {
      out.Require(mean_spectral >= 5.0 * mean_mle,
                  Fmt("n=240 spectral/mle ratio %.2f (spectral %.3f, mle %.3f)",
                      mean_spectral / mean_mle, mean_spectral, mean_mle));
    }
    const std::pair<ScoreKind, int> sine{ScoreKind::kSine, n * 1000 + 100};
    const double ratio = Mean(spectral.at(sine)) / Mean(mle.at(sine));
    out.Require(ratio <= 2.0 && ratio >= 0.5, Fmt("n=%g sine ratio %.2f", n, ratio));
    out.Note(Fmt("n=%g linear mle %.3f spectral %.3f", n, mean_mle, mean_spectral) +
                  Fmt(" sine ratio %.2f", ratio));
  }
  return out;
}

void CheckBoundConformance(Outcome& out, const ExperimentConfig& config, const std::string& label) {
  const ExperimentResult result = RunExperiment(config);
  std::map<int, double> bound;
  for (const TrialRecord& record : result.records) bound[record.samples] = record.theory_bound;
  const auto mle = ErrorsBy(result, "mle");
  const auto dc = ErrorsBy(result, "dc-overlap");
  for (const auto& [samples, b] : bound) {
    const std::pair<ScoreKind, int> key{ScoreKind::kLinear, config.n_values[0] * 1000 + samples};
    for (const auto& [name, errors] : {std::pair{"mle", mle.at(key)}, std::pair{"dc-overlap", dc.at(key)}}) {
      const double within = static_cast<double>(std::count_if(errors.begin(), errors.end(),
                                                              [&](double e) { return e <= b; })) /
                            static_cast<double>(errors.size());
      out.Require(within >= 0.9, label + " L=" + std::to_string(samples) + " " + name +
                                     Fmt(" within bound %.2f (bound %.3f, mean %.3f)", within, b,
                                         Mean(errors)));
    }
    const double ratio = Mean(dc.at(key)) / Mean(mle.at(key));
    out.Require(ratio <= 1.5 && ratio >= 1.0 / 1.5,
                label + " L=" + std::to_string(samples) + Fmt(" mean ratio %.2f", ratio));
  }
}

Outcome TheoryBoundConformance() {
  Outcome out;
  CheckBoundConformance(out, DefaultExperimentConfig(ExperimentId::kMleVsDcOverlap), "1d");
  ExperimentConfig grid2d = DefaultExperimentConfig(ExperimentId::kMleVsDcOverlap);
  grid2d.grid = GridKind::k2D;
  grid2d.n_values = {256};
  grid2d.r_values = {4};
  grid2d.theory_constant = 6.0;
  CheckBoundConformance(out, grid2d, "2d");
  return out;
}

Outcome AlignmentIdentity() {
  Outcome out;
  Rng rng(808);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 5 + static_cast<int>(rng.UniformInt(6));
    const int n = 6 * r + static_cast<int>(rng.UniformInt(8 * r));
    const GridSpec spec{GridKind::k1D, n, r, 0.8};
    const ComparisonGraph g = GenerateGrid(spec, 20, rng);
    const Eigen::VectorXd theta_star =
        MakeScores(trial % 2 ? ScoreKind::kSine : ScoreKind::kLinear, n, r).values();
    const ComparisonData d = SampleComparisons(g, theta_star, rng);
    const GridPartition part = PartitionGrid(g, spec, PartitionMode::kOverlapping);
    const DcResult result = DcOverlap(g, d, part.partition);
    const AlignmentTruth truth = ComputeAlignmentTruth(part.partition, result.local, theta_star);
    worst = std::max(worst, AlignmentErrorIdentityResidual(part.partition, part.super_graph,
                                                           truth.local_errors, truth.c_star,
                                                           result.alignment.c));
  }
  out.Require(worst <= 1e-8, Fmt("residual %.3g", worst));
  out.Note(Fmt("max residual %.2g", worst));
  return out;
}

Outcome ExistenceDetection() {
  Outcome out;
  const ComparisonGraph star(5, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}});
  const ComparisonData losing(star, {{0, 1, 0, 3}, {0, 2, 0, 3}, {0, 3, 0, 3}, {0, 4, 0, 3}});
  const MleProblem star_problem(star, losing);
  out.Require(!MleExists(star_problem), "star reported as existing");
  bool raised = false;
  try {
    SolveMle(star_problem, DefaultSolverConfig(SolverMethod::kPreconditionedGD));
  } catch (const NonexistenceError&) {
    raised = true;
  }
  out.Require(raised, "star solve did not raise nonexistence");

  const ComparisonGraph cycle(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
  const ComparisonData unanimous(cycle, {{0, 1, 2, 2}, {1, 2, 2, 2}, {0, 2, 0, 2}});
  const MleProblem cycle_problem(cycle, unanimous);
  out.Require(MleExists(cycle_problem), "cycle reported as nonexistent");
  const MleSolution sol =
      SolveMle(cycle_problem, DefaultSolverConfig(SolverMethod::kPreconditionedGD));
  out.Require(sol.trace.converged, "cycle solve did not converge");
  return out;
}

Outcome ResistanceScalingShape() {
  Outcome out;
  std::vector<double> values;
  for (int n : {64, 128, 256}) {
    for (int r : {2, 4, 8}) {
      Rng rng(n * 10 + r);
      const ComparisonGraph g = GenerateGrid({GridKind::k1D, n, r, 1.0}, 1, rng);
      const PseudoInverseColumns columns(OracleLaplacian(g, Eigen::VectorXd::Zero(n)));
      double max_omega = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) max_omega = std::max(max_omega, columns.Resistance(k, l));
      }
      values.push_back(max_omega * r / (static_cast<double>(n) / (r * r) + 1.0));
    }
  }
  const double spread = *std::max_element(values.begin(), values.end()) /
                        *std::min_element(values.begin(), values.end());
  out.Require(spread <= 3.0, Fmt("spread %.2f", spread));
  out.Note(Fmt("spread %.2f", spread));
  return out;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  double time_limit_s;
};

}  // namespace
}  // namespace btlrank

int main() {
  using namespace btlrank;
  const double kNoLimit = std::numeric_limits<double>::infinity();
  const std::vector<Criterion> criteria{
      {1, "resistance laws", ResistanceLaws, 5.0},
      {2, "gradient and hessian checks", GradientAndHessian, kNoLimit},
      {3, "line graph closed form", LineClosedForm, kNoLimit},
      {4, "solver agreement", SolverAgreement, kNoLimit},
      {5, "convergence ordering", ConvergenceOrdering, 120.0},
      {6, "spectral failure on linear scores", SpectralFailure, 180.0},
      {7, "theory bound conformance", TheoryBoundConformance, 300.0},
      {8, "alignment error identity", AlignmentIdentity, kNoLimit},
      {9, "existence detection", ExistenceDetection, kNoLimit},
      {10, "resistance scaling shape", ResistanceScalingShape, kNoLimit},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > c.time_limit_s) outcome.Require(false, Fmt("runtime %.1f s over %.0f s", seconds, c.time_limit_s));
    if (!outcome.pass) ++failures;
    std::printf("%s %2d %s (%.1f s): %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
