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

#ifndef BTLRANK_TESTS_SUPPORT_TEST_SUPPORT_H_
#define BTLRANK_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "btlrank/graph.h"
#include "btlrank/laplacian.h"
#include "btlrank/model.h"
#include "btlrank/rng.h"
#include "oracles/oracles.h"

namespace btlrank::testing {

// Random connected graph: a random spanning tree plus each remaining pair
// with probability `extra`. Sample counts are uniform in [1, max_samples].
ComparisonGraph RandomConnectedGraph(int n, double extra, int max_samples, Rng& rng);

// Random weighted connected Laplacian edges with weights in [0.1, 2].
std::vector<WeightedEdge> RandomWeightedEdges(int n, double extra, Rng& rng);

// Outcomes with every win count strictly between 0 and L (so the MLE exists).
ComparisonData RandomInteriorData(const ComparisonGraph& graph, Rng& rng);

std::vector<oracle::DenseEdge> ToDense(std::span<const WeightedEdge> edges);
std::vector<oracle::Comparison> ToDense(const ComparisonData& data);

// Max |(x_k - x_l) - (y_k - y_l)| over all pairs.
double MaxPairwiseGap(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace btlrank::testing

#endif  // BTLRANK_TESTS_SUPPORT_TEST_SUPPORT_H_
