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

#ifndef BTLRANK_EXPERIMENTS_H_
#define BTLRANK_EXPERIMENTS_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "btlrank/estimators.h"
#include "btlrank/graph.h"
#include "btlrank/model.h"

namespace btlrank {

enum class ExperimentId { kMleVsSpectral, kMleVsDcOverlap, kConvergence };

std::string ToString(ExperimentId id);
ExperimentId ParseExperimentId(const std::string& name);
std::string ToString(ScoreKind kind);
ScoreKind ParseScoreKind(const std::string& name);

// A sweep over grid parameters. Every combination of the value lists is a
// "point"; each point runs `trials` independent trials.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::kMleVsSpectral;
  GridKind grid = GridKind::k1D;
  std::vector<int> n_values;
  std::vector<int> r_values;
  std::vector<double> p_values;
  std::vector<int> sample_values;  // L
  std::vector<ScoreKind> score_kinds;
  int trials = 20;
  std::uint64_t base_seed = 1;
  // Empty means the experiment's default method list.
  std::vector<std::string> methods;
  std::string output_dir;
  int workers = 0;
  // Iteration cap for the convergence experiment.
  int max_iterations = 20000;
  // Constant of the locality bound curve (5 for 1D, 6 for 2D in the defaults).
  double theory_constant = 5.0;

  // Throws InvalidArgumentError for empty sweeps or trials < 1.
  void Validate() const;
};

// Desk-scale defaults for each experiment. `full_scale` restores the larger
// sweeps and trial counts.
ExperimentConfig DefaultExperimentConfig(ExperimentId id, bool full_scale = false);

ExperimentConfig ParseExperimentConfig(std::istream& json);
void WriteExperimentConfig(std::ostream& out, const ExperimentConfig& config);

struct MethodOutcome {
  std::string method;
  bool ok = true;
  std::string note;
  double linf = std::numeric_limits<double>::quiet_NaN();
  double max_pairwise = std::numeric_limits<double>::quiet_NaN();
  // ||pi - pi*||_inf / ||pi*||_inf for estimators producing pi.
  double pi_relative_error = std::numeric_limits<double>::quiet_NaN();
  // Iterations used (convergence experiment: to reach the loss threshold;
  // -1 when never reached).
  int iterations = 0;
  bool diverged = false;
  double wall_ms = 0.0;
};

struct TrialRecord {
  int point = 0;
  ScoreKind score_kind = ScoreKind::kLinear;
  int n = 0;
  int r = 0;
  double p = 0.0;
  int samples = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double theory_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<MethodOutcome> methods;
};

// Per-method trace of one convergence trial, loss gaps relative to the
// reference minimizer.
struct MethodTrace {
  std::string method;
  int trial = 0;
  ConvergenceTrace trace;
  double reference_loss = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<MethodTrace> traces;
  bool any_failure = false;
};

// Trial seed: base_seed XOR trial index. Distinct sweep points use distinct
// streams of that seed, so records do not depend on the worker count.
std::uint64_t TrialSeed(std::uint64_t base_seed, int trial);

// Runs every (point, trial) on a bounded worker pool. Per-trial failures are
// recorded in the outcome and do not stop the run.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Writes records.csv, summary.csv, timing.csv and, for the convergence
// experiment, one trace_<method>.csv per method into config.output_dir.
// records.csv and summary.csv are deterministic functions of the config.
void WriteExperimentOutputs(const ExperimentResult& result);

void WriteRecordsCsv(std::ostream& out, const ExperimentResult& result);
void WriteSummaryCsv(std::ostream& out, const ExperimentResult& result);

// One trial of the convergence comparison: PrecondGD with the oracle and the
// quarter-scaled surrogate preconditioners (step 1), PGD, CD and GD at
// eta_small and 5 eta_small, where eta_small = 1 / (r p L) in 1D and
// 1 / (r^2 p L) in 2D. Iteration counts are to reach
// loss - loss(MLE) <= gap_factor * total_samples.
struct ConvergenceTrial {
  double reference_loss = 0.0;
  double threshold = 0.0;
  std::vector<MethodTrace> traces;
  std::vector<MethodOutcome> outcomes;
};

std::vector<std::string> ConvergenceMethods();

ConvergenceTrial RunConvergenceTrial(const GridSpec& spec, int samples, ScoreKind kind,
                                     std::uint64_t seed, int max_iterations,
                                     double gap_factor = 1e-6,
                                     const std::vector<std::string>& methods = {});

}  // namespace btlrank

#endif  // BTLRANK_EXPERIMENTS_H_
