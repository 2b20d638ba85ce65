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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "btlrank/error.h"
#include "btlrank/estimators.h"
#include "btlrank/model.h"
#include "support/test_support.h"

namespace btlrank {
namespace {

TEST(Sigmoid, Values) {
  EXPECT_DOUBLE_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(SigmoidDerivative(1.0), 0.196612, 1e-6);
  EXPECT_GE(SigmoidDerivative(1.0), 1.0 / (4.0 * std::exp(1.0)));
  EXPECT_NEAR(Logit(0.7), std::log(7.0 / 3.0), 1e-15);
  EXPECT_NEAR(Logit(0.7), 0.847298, 1e-6);
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(800.0), 1.0);
  EXPECT_EQ(Sigmoid(-800.0), 0.0);
  EXPECT_TRUE(std::isfinite(Softplus(800.0)));
  EXPECT_NEAR(Softplus(800.0), 800.0, 1e-12);
  EXPECT_NEAR(Softplus(0.0), std::log(2.0), 1e-15);
  EXPECT_GT(Sigmoid(-30.0), 0.0);
  EXPECT_LT(Sigmoid(30.0), 1.0);
}

TEST(Sigmoid, LogitRoundTrip) {
  const double eps = std::numeric_limits<double>::epsilon();
  for (double x = -30.0; x <= 30.0; x += 0.37) {
    EXPECT_NEAR(Logit(Sigmoid(x)), x, 2.0 * eps * (std::abs(x) + std::exp(std::abs(x))));
  }
  for (double x = -15.0; x <= 15.0; x += 0.5) EXPECT_NEAR(Logit(Sigmoid(x)), x, 1e-9);
}

TEST(Sigmoid, LogitDomain) {
  EXPECT_THROW(Logit(0.0), InvalidArgumentError);
  EXPECT_THROW(Logit(1.0), InvalidArgumentError);
  EXPECT_THROW(Logit(-0.1), InvalidArgumentError);
}

TEST(Sigmoid, DerivativeLowerBound) {
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    EXPECT_GE(SigmoidDerivative(x), 1.0 / (4.0 * std::exp(std::abs(x))) * (1 - 1e-12));
  }
}

TEST(ScoreVector, ZeroSumGauge) {
  Eigen::VectorXd v(3);
  v << 1, 2, 3;
  const ScoreVector s = ScoreVector::ZeroSum(v);
  EXPECT_EQ(s.gauge(), Gauge::kZeroSum);
  EXPECT_NEAR(s[0], -1.0, 1e-15);
  EXPECT_NEAR(s[2], 1.0, 1e-15);
  EXPECT_THROW(ScoreVector(v, Gauge::kZeroSum), InvalidArgumentError);
  EXPECT_NO_THROW(ScoreVector(v, Gauge::kRaw));
}

TEST(MakeScores, Recipes) {
  const ScoreVector linear = MakeScores(ScoreKind::kLinear, 3, 1.0);
  EXPECT_NEAR(linear[0], -1.0, 1e-15);
  EXPECT_NEAR(linear[1], 0.0, 1e-15);
  EXPECT_NEAR(linear[2], 1.0, 1e-15);

  const ScoreVector sine = MakeScores(ScoreKind::kSine, 2, 1.0);
  EXPECT_NEAR(sine[0] + sine[1], 0.0, 1e-15);
  EXPECT_NEAR(sine[1] - sine[0], std::sin(2.0) - std::sin(1.0), 1e-15);

  const ScoreVector grid2d = MakeScores(ScoreKind::kLinear, 9, 2.0, GridKind::k2D);
  // Node (i1, i2) = (1, 2) has raw score (2 + 3) / 2.
  EXPECT_NEAR(grid2d[1 * 3 + 2] - grid2d[0], (5.0 - 2.0) / 2.0, 1e-15);
  EXPECT_THROW(MakeScores(ScoreKind::kLinear, 8, 1.0, GridKind::k2D), InvalidArgumentError);
}

TEST(MakeScores, LinearEdgeRangeOnGrid) {
  Rng rng(1);
  const ComparisonGraph g = GenerateGrid({GridKind::k1D, 100, 10, 1.0}, 1, rng);
  const DynamicRange range = ComputeDynamicRange(g, MakeScores(ScoreKind::kLinear, 100, 10).values());
  EXPECT_NEAR(range.kappa_edge, std::exp(1.0), 1e-12);
}

TEST(DynamicRange, Examples) {
  const ComparisonGraph path(3, {{0, 1, 1}, {1, 2, 1}});
  EXPECT_EQ(ComputeDynamicRange(path, Eigen::VectorXd::Constant(3, 2.0)).kappa, 1.0);
  const DynamicRange linear = ComputeDynamicRange(path, MakeScores(ScoreKind::kLinear, 3, 1.0).values());
  EXPECT_NEAR(linear.kappa, std::exp(2.0), 1e-12);
  EXPECT_NEAR(linear.kappa_edge, std::exp(1.0), 1e-12);
  const ComparisonGraph complete(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const Eigen::VectorXd theta = Eigen::VectorXd::Random(3);
  const DynamicRange full = ComputeDynamicRange(complete, theta);
  EXPECT_DOUBLE_EQ(full.kappa, full.kappa_edge);
}

TEST(ComparisonData, Validation) {
  const ComparisonGraph g(2, {{0, 1, 3}});
  EXPECT_THROW(ComparisonData(g, {{0, 1, 4.0, 3}}), InvalidArgumentError);
  EXPECT_THROW(ComparisonData(g, {{0, 1, -1.0, 3}}), InvalidArgumentError);
  EXPECT_THROW(ComparisonData(g, {{0, 1, 1.0, 2}}), InvalidArgumentError);
  EXPECT_THROW(ComparisonData(g, {}), InvalidArgumentError);
  const ComparisonData d(g, {{0, 1, 2.0, 3}});
  EXPECT_NEAR(d.outcome(0).win_rate(), 2.0 / 3.0, 1e-15);
}

TEST(SampleComparisons, FairCoinConcentration) {
  const ComparisonGraph g(2, {{0, 1, 1000000}});
  Rng rng(3);
  const ComparisonData d = SampleComparisons(g, Eigen::VectorXd::Zero(2), rng);
  EXPECT_NEAR(d.outcome(0).win_rate(), 0.5, 0.002);
}

TEST(SampleComparisons, SingleSamplesAreBinary) {
  Rng rng(4);
  const ComparisonGraph g = GenerateGrid({GridKind::k1D, 50, 3, 1.0}, 1, rng);
  const ComparisonData d = SampleComparisons(g, MakeScores(ScoreKind::kSine, 50, 3).values(), rng);
  for (const EdgeOutcome& o : d.outcomes()) {
    EXPECT_TRUE(o.wins == 0.0 || o.wins == 1.0);
    EXPECT_EQ(o.wins, std::floor(o.wins));
  }
}

TEST(SampleComparisons, Deterministic) {
  Rng g_rng(5);
  const ComparisonGraph g = GenerateGrid({GridKind::k1D, 40, 3, 0.7}, 20, g_rng);
  const Eigen::VectorXd theta = MakeScores(ScoreKind::kSine, 40, 3).values();
  Rng a(6), b(6);
  const ComparisonData da = SampleComparisons(g, theta, a);
  const ComparisonData db = SampleComparisons(g, theta, b);
  for (std::size_t e = 0; e < g.num_edges(); ++e) EXPECT_EQ(da.outcome(e).wins, db.outcome(e).wins);
}

TEST(SampleComparisons, EmpiricalMeansMatchModel) {
  Rng rng(7);
  const ComparisonGraph g = GenerateGrid({GridKind::k1D, 30, 3, 1.0}, 100000, rng);
  const Eigen::VectorXd theta = MakeScores(ScoreKind::kLinear, 30, 3).values();
  const ComparisonData d = SampleComparisons(g, theta, rng);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const double p = Sigmoid(theta[edge.i] - theta[edge.j]);
    EXPECT_NEAR(d.outcome(e).win_rate(), p, 4.0 * std::sqrt(p * (1 - p) / edge.samples));
  }
}

TEST(Population, ExpectedOutcomes) {
  const ComparisonGraph g(2, {{0, 1, 4}});
  Eigen::VectorXd theta(2);
  theta << 1.0, 0.0;
  const ComparisonData d = ComparisonData::Population(g, theta);
  EXPECT_NEAR(d.outcome(0).win_rate(), Sigmoid(1.0), 1e-15);
}

TEST(ModelWeights, RangeAndLowerBound) {
  Rng rng(8);
  const ComparisonGraph g = testing::RandomConnectedGraph(15, 0.3, 5, rng);
  const Eigen::VectorXd theta = 2.0 * Eigen::VectorXd::Random(15);
  const std::vector<double> z = ModelWeights(g, theta);
  const double kappa_edge = ComputeDynamicRange(g, theta).kappa_edge;
  for (double w : z) {
    EXPECT_GT(w, 0.0);
    EXPECT_LE(w, 0.25);
    EXPECT_GE(w, 1.0 / (4.0 * kappa_edge) * (1 - 1e-12));
  }
}

TEST(OracleLaplacian, Examples) {
  const ComparisonGraph g(2, {{0, 1, 3}});
  Eigen::VectorXd theta(2);
  theta << 0.5, -0.5;
  const LaplacianOperator lz = OracleLaplacian(g, theta);
  EXPECT_NEAR(lz.edges()[0].weight, 3.0 * SigmoidDerivative(1.0), 1e-15);
  EXPECT_NEAR(lz.edges()[0].weight, 0.589836, 1e-6);

  Rng rng(9);
  const ComparisonGraph random = testing::RandomConnectedGraph(10, 0.3, 4, rng);
  const Eigen::MatrixXd at_zero = OracleLaplacian(random, Eigen::VectorXd::Zero(10)).ToDense();
  EXPECT_TRUE(at_zero.isApprox(0.25 * SurrogateLaplacian(random).ToDense(), 1e-15));
  EXPECT_TRUE(SurrogateLaplacian(random, 0.25).ToDense().isApprox(at_zero, 1e-15));
}

TEST(OracleLaplacian, DisconnectedIsError) {
  const ComparisonGraph g(4, {{0, 1, 1}, {2, 3, 1}});
  EXPECT_THROW(OracleLaplacian(g, Eigen::VectorXd::Zero(4)), InvalidArgumentError);
  EXPECT_THROW(SurrogateLaplacian(g), InvalidArgumentError);
}

TEST(OracleLaplacian, SandwichBetweenScaledSurrogates) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 12;
    const ComparisonGraph g = testing::RandomConnectedGraph(n, 0.3, 5, rng);
    const Eigen::VectorXd theta = 1.5 * Eigen::VectorXd::Random(n);
    const double kappa_edge = ComputeDynamicRange(g, theta).kappa_edge;
    const Eigen::MatrixXd lz = OracleLaplacian(g, theta).ToDense();
    const Eigen::MatrixXd lg = SurrogateLaplacian(g).ToDense();
    // Extremal generalized Rayleigh quotients on the complement of 1.
    const Eigen::MatrixXd pinv_half = [&] {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lz);
      Eigen::VectorXd inv = eig.eigenvalues();
      for (int k = 0; k < n; ++k) inv[k] = inv[k] > 1e-10 ? 1.0 / std::sqrt(inv[k]) : 0.0;
      return Eigen::MatrixXd(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose());
    }();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ratio(pinv_half * lg * pinv_half);
    const Eigen::VectorXd values = ratio.eigenvalues().tail(n - 1);
    EXPECT_GE(values.minCoeff(), 1.0 - 1e-9);
    EXPECT_LE(values.maxCoeff(), 4.0 * kappa_edge * (1 + 1e-9));
  }
}

TEST(OracleLaplacian, EqualsHessianAtTruth) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComparisonGraph g = testing::RandomConnectedGraph(9, 0.4, 6, rng);
    const ComparisonData d = testing::RandomInteriorData(g, rng);
    const Eigen::VectorXd theta = Eigen::VectorXd::Random(9);
    const Eigen::MatrixXd h = Hessian(MleProblem(g, d), theta).ToDense();
    const Eigen::MatrixXd lz = OracleLaplacian(g, theta).ToDense();
    EXPECT_LE((h - lz).cwiseAbs().maxCoeff(), 1e-12);
  }
}

}  // namespace
}  // namespace btlrank
