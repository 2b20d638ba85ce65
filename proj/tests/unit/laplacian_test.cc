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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "btlrank/error.h"
#include "btlrank/laplacian.h"
#include "support/test_support.h"

namespace btlrank {
namespace {

using testing::RandomWeightedEdges;
using testing::ToDense;

LaplacianOperator Path(int n, double w = 1.0) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return LaplacianOperator::Assemble(n, edges);
}

LaplacianOperator Complete(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return LaplacianOperator::Assemble(n, edges);
}

TEST(Assemble, TwoNodeMatrix) {
  const std::vector<WeightedEdge> edges{{0, 1, 2.0}};
  const Eigen::MatrixXd dense = LaplacianOperator::Assemble(2, edges).ToDense();
  Eigen::MatrixXd expected(2, 2);
  expected << 2, -2, -2, 2;
  EXPECT_EQ(dense, expected);
}

TEST(Assemble, PathApply) {
  Eigen::VectorXd x(3);
  x << 1, 0, -1;
  const Eigen::VectorXd y = Path(3) * x;
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  EXPECT_DOUBLE_EQ(y[2], -1.0);
}

TEST(Assemble, OnesInNullSpaceExactly) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto edges = RandomWeightedEdges(15, 0.3, rng);
    const LaplacianOperator l = LaplacianOperator::Assemble(15, edges);
    const Eigen::VectorXd y = l * Eigen::VectorXd::Ones(15);
    for (int i = 0; i < 15; ++i) EXPECT_EQ(y[i], 0.0);
  }
}

TEST(Assemble, RejectsBadInput) {
  const std::vector<WeightedEdge> zero{{0, 1, 0.0}};
  const std::vector<WeightedEdge> negative{{0, 1, -1.0}};
  const std::vector<WeightedEdge> loop{{1, 1, 1.0}};
  const std::vector<WeightedEdge> range{{0, 5, 1.0}};
  EXPECT_THROW(LaplacianOperator::Assemble(2, zero), InvalidArgumentError);
  EXPECT_THROW(LaplacianOperator::Assemble(2, negative), InvalidArgumentError);
  EXPECT_THROW(LaplacianOperator::Assemble(2, loop), InvalidArgumentError);
  EXPECT_THROW(LaplacianOperator::Assemble(2, range), InvalidArgumentError);
}

TEST(Assemble, MergesParallelEdges) {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 0, 3.0}};
  const LaplacianOperator l = LaplacianOperator::Assemble(2, edges);
  ASSERT_EQ(l.edges().size(), 1u);
  EXPECT_DOUBLE_EQ(l.edges()[0].weight, 4.0);
  EXPECT_NEAR(EffectiveResistance(l, 0, 1), 0.25, 1e-12);
}

TEST(Assemble, SymmetricAndQuadraticForm) {
  Rng rng(5);
  const auto edges = RandomWeightedEdges(10, 0.4, rng);
  const LaplacianOperator l = LaplacianOperator::Assemble(10, edges);
  const Eigen::MatrixXd dense = l.ToDense();
  EXPECT_TRUE(dense.isApprox(dense.transpose()));
  const Eigen::VectorXd x = Eigen::VectorXd::Random(10);
  EXPECT_NEAR(l.QuadraticForm(x), x.dot(dense * x), 1e-10);
  EXPECT_GE(l.QuadraticForm(x), 0.0);
  EXPECT_TRUE(l.Scaled(0.25).ToDense().isApprox(0.25 * dense));
}

TEST(SolveOrthogonal, TwoNode) {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}};
  Eigen::VectorXd b(2);
  b << 1, -1;
  const SolveResult r = SolveOrthogonal(LaplacianOperator::Assemble(2, edges), b);
  EXPECT_NEAR(r.solution[0], 0.5, 1e-12);
  EXPECT_NEAR(r.solution[1], -0.5, 1e-12);
  EXPECT_TRUE(r.report.converged);
}

TEST(SolveOrthogonal, CompleteGraph) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
  b[0] = 1;
  b[1] = -1;
  const SolveResult r = SolveOrthogonal(Complete(4), b);
  EXPECT_NEAR(r.solution[0] - r.solution[1], 0.5, 1e-10);
}

TEST(SolveOrthogonal, ZeroRightHandSide) {
  const SolveResult r = SolveOrthogonal(Path(5), Eigen::VectorXd::Zero(5));
  EXPECT_EQ(r.solution, Eigen::VectorXd::Zero(5));
  EXPECT_TRUE(r.report.converged);
}

TEST(SolveOrthogonal, MatchesDenseOracleAndIsCentered) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20 + trial * 3;
    const auto edges = RandomWeightedEdges(n, 0.15, rng);
    const LaplacianOperator l = LaplacianOperator::Assemble(n, edges);
    const Eigen::MatrixXd pinv = oracle::PseudoInverse(oracle::DenseLaplacian(n, ToDense(edges)));
    Eigen::VectorXd b = Eigen::VectorXd::Random(n);
    b.array() -= b.mean();
    const SolveResult r = SolveOrthogonal(l, b);
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(r.report.residual, 1e-10);
    EXPECT_LE((r.solution - pinv * b).norm(), 1e-8 * (pinv * b).norm());
    EXPECT_LE(std::abs(r.solution.sum()), 1e-12 * r.solution.norm() * n);
  }
}

TEST(SolveOrthogonal, ProjectsRightHandSide) {
  Eigen::VectorXd b(3);
  b << 2, 1, 0;  // mean 1 is removed first
  const SolveResult r = SolveOrthogonal(Path(3), b);
  Eigen::VectorXd centered = b.array() - 1.0;
  EXPECT_LE((Path(3) * r.solution - centered).norm(), 1e-10);
}

TEST(SolveOrthogonal, DisconnectedIsError) {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {2, 3, 1.0}};
  EXPECT_THROW(SolveOrthogonal(LaplacianOperator::Assemble(4, edges), Eigen::VectorXd::Zero(4)),
               BtlError);
}

TEST(SolveOrthogonal, NonConvergenceReported) {
  const LaplacianOperator l = Path(400, 1.0);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(400);
  b[0] = 1;
  b[399] = -1;
  SolveOptions options;
  options.max_iterations = 3;
  options.dense_fallback = false;
  const SolveResult r = SolveOrthogonal(l, b, options);
  EXPECT_FALSE(r.report.converged);
  EXPECT_GT(r.report.residual, options.tolerance);
}

TEST(SolveOrthogonal, ConvergedImpliesResidualBelowTolerance) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto edges = RandomWeightedEdges(60, 0.05, rng);
    Eigen::VectorXd b = Eigen::VectorXd::Random(60);
    const SolveResult r = SolveOrthogonal(LaplacianOperator::Assemble(60, edges), b);
    if (r.report.converged) EXPECT_LE(r.report.residual, 1e-10);
  }
}

TEST(EffectiveResistance, SeriesLaw) {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 0.5}, {2, 3, 1.0 / 3.0}};
  EXPECT_NEAR(EffectiveResistance(LaplacianOperator::Assemble(4, edges), 0, 3), 6.0, 1e-10);
}

TEST(EffectiveResistance, CompleteGraph) {
  const LaplacianOperator l = Complete(4);
  for (int k = 0; k < 4; ++k) {
    for (int m = k + 1; m < 4; ++m) EXPECT_NEAR(EffectiveResistance(l, k, m), 0.5, 1e-10);
  }
}

TEST(EffectiveResistance, SameNodeIsZero) { EXPECT_EQ(EffectiveResistance(Path(3), 1, 1), 0.0); }

TEST(ResistanceMatrix, RingAndPath) {
  std::vector<WeightedEdge> ring{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}};
  const std::vector<NodePair> opposite{{0, 2}};
  EXPECT_NEAR(ResistanceMatrix(LaplacianOperator::Assemble(4, ring), opposite).at({0, 2}), 1.0,
              1e-10);
  const std::vector<NodePair> ends{{0, 2}};
  EXPECT_NEAR(ResistanceMatrix(Path(3), ends).at({0, 2}), 2.0, 1e-10);
}

TEST(ResistanceMatrix, AllPairsSymmetricAndMatchOracle) {
  Rng rng(8);
  const int n = 30;
  const auto edges = RandomWeightedEdges(n, 0.1, rng);
  const LaplacianOperator l = LaplacianOperator::Assemble(n, edges);
  const auto omega = ResistanceMatrix(l);
  EXPECT_EQ(omega.size(), static_cast<std::size_t>(n * (n - 1) / 2));
  const Eigen::MatrixXd pinv = oracle::PseudoInverse(oracle::DenseLaplacian(n, ToDense(edges)));
  for (const auto& [pair, value] : omega) {
    const double expected = oracle::Resistance(pinv, pair.k, pair.l);
    EXPECT_NEAR(value, expected, 1e-8 * expected);
  }
  const std::vector<NodePair> reversed{{5, 2}};
  const auto normalized = ResistanceMatrix(l, reversed);
  ASSERT_EQ(normalized.size(), 1u);
  EXPECT_NEAR(normalized.at({2, 5}), omega.at({2, 5}), 1e-12);
}

TEST(PseudoInverseColumns, MatchesOracle) {
  Rng rng(9);
  const int n = 25;
  const auto edges = RandomWeightedEdges(n, 0.2, rng);
  const LaplacianOperator l = LaplacianOperator::Assemble(n, edges);
  const Eigen::MatrixXd pinv = oracle::PseudoInverse(oracle::DenseLaplacian(n, ToDense(edges)));
  const PseudoInverseColumns columns(l);
  for (int k = 0; k < n; k += 3) {
    for (int m = k + 1; m < n; m += 4) {
      const Eigen::VectorXd expected = pinv.col(k) - pinv.col(m);
      EXPECT_LE((columns.Column(k, m) - expected).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(columns.Potential(3, k, m), expected[3], 1e-10);
      EXPECT_NEAR(columns.Resistance(k, m), oracle::Resistance(pinv, k, m), 1e-10);
    }
  }
}

TEST(LaplacianFactor, MatchesOracle) {
  Rng rng(10);
  const int n = 40;
  const auto edges = RandomWeightedEdges(n, 0.1, rng);
  const LaplacianFactor factor(LaplacianOperator::Assemble(n, edges));
  const Eigen::MatrixXd pinv = oracle::PseudoInverse(oracle::DenseLaplacian(n, ToDense(edges)));
  const Eigen::VectorXd b = Eigen::VectorXd::Random(n);
  const Eigen::VectorXd v = factor.Solve(b);
  EXPECT_LE((v - pinv * b).norm(), 1e-10 * (pinv * b).norm());
}

TEST(DensePseudoInverse, MatchesOracle) {
  Rng rng(11);
  const auto edges = RandomWeightedEdges(12, 0.3, rng);
  const Eigen::MatrixXd a = DensePseudoInverse(LaplacianOperator::Assemble(12, edges));
  const Eigen::MatrixXd b = oracle::PseudoInverse(oracle::DenseLaplacian(12, ToDense(edges)));
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10);
}

// Resistance-distance properties on random graphs, against the dense oracle.
TEST(ResistanceProperties, TriangleInequalityAndRayleighMonotonicity) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 8;
    auto edges = RandomWeightedEdges(n, 0.4, rng);
    const auto omega = ResistanceMatrix(LaplacianOperator::Assemble(n, edges));
    auto at = [&](int a, int b) { return a == b ? 0.0 : omega.at({std::min(a, b), std::max(a, b)}); };
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) EXPECT_LE(at(a, b), at(a, c) + at(c, b) + 1e-10);
      }
    }
    const std::size_t e = rng.UniformInt(edges.size());
    edges[e].weight *= 0.5;
    const auto lighter = ResistanceMatrix(LaplacianOperator::Assemble(n, edges));
    for (const auto& [pair, value] : omega) EXPECT_GE(lighter.at(pair), value - 1e-10);
  }
}

TEST(ResistanceProperties, GridScalingShape) {
  std::vector<double> adjacent, any;
  for (int n : {64, 128, 256}) {
    for (int r : {2, 4, 8}) {
      std::vector<WeightedEdge> edges;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j <= std::min(n - 1, i + r); ++j) edges.push_back({i, j, 1.0});
      }
      const LaplacianOperator l = LaplacianOperator::Assemble(n, edges);
      const PseudoInverseColumns columns(l);
      double max_adjacent = 0.0, max_any = 0.0;
      for (int i = 0; i + 1 < n; ++i) max_adjacent = std::max(max_adjacent, columns.Resistance(i, i + 1));
      for (int k = 0; k < n; ++k) {
        for (int m = k + 1; m < n; ++m) max_any = std::max(max_any, columns.Resistance(k, m));
      }
      adjacent.push_back(max_adjacent * r);
      any.push_back(max_any * r / (static_cast<double>(n) / (r * r) + 1.0));
    }
  }
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  EXPECT_LE(spread(adjacent), 3.0);
  EXPECT_LE(spread(any), 3.0);
}

}  // namespace
}  // namespace btlrank
