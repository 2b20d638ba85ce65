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

#ifndef BTLRANK_IO_H_
#define BTLRANK_IO_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "btlrank/estimators.h"
#include "btlrank/graph.h"
#include "btlrank/laplacian.h"
#include "btlrank/metrics.h"
#include "btlrank/model.h"

// File formats:
//   graph       CSV  i,j,L         (0-based, i < j)
//   data        CSV  i,j,wins,L
//   scores      JSON [theta_0, theta_1, ...]
//   partition   JSON [[nodes of V_0], [nodes of V_1], ...]; disjoint when the
//               subset sizes sum to n, overlapping otherwise. An object
//               {"mode": ..., "subsets": [...]} is also accepted.
//   resistance  CSV  k,l,omega
//   bounds      CSV  k,l,omega,B,Q,V
//   trace       CSV  iteration,loss,grad_norm,linf_to_reference
// Readers throw InvalidArgumentError with the offending line on bad input.

namespace btlrank {

// Shortest round-trip representation of a double.
std::string FormatDouble(double value);

void WriteGraphCsv(std::ostream& out, const ComparisonGraph& graph);
ComparisonGraph ReadGraphCsv(std::istream& in);
// The node count is 1 + the largest index unless `num_nodes` is given.
ComparisonGraph ReadGraphCsv(std::istream& in, int num_nodes);

void WriteDataCsv(std::ostream& out, const ComparisonData& data);
// Rows must list the graph's edges; any row order is accepted.
ComparisonData ReadDataCsv(std::istream& in, const ComparisonGraph& graph);

void WriteScoresJson(std::ostream& out, const Eigen::VectorXd& scores);
Eigen::VectorXd ReadScoresJson(std::istream& in);

void WritePartitionJson(std::ostream& out, const Partition& partition);
Partition ReadPartitionJson(std::istream& in, int num_nodes);

void WriteResistanceCsv(std::ostream& out, const std::map<NodePair, double>& omega);
void WriteBoundsCsv(std::ostream& out, const BoundQuantities& bounds);
void WriteTraceCsv(std::ostream& out, const ConvergenceTrace& trace);

// File-path conveniences; throw BtlError when the file cannot be opened.
ComparisonGraph LoadGraph(const std::string& path);
ComparisonData LoadData(const std::string& path, const ComparisonGraph& graph);
Eigen::VectorXd LoadScores(const std::string& path);
Partition LoadPartition(const std::string& path, int num_nodes);

}  // namespace btlrank

#endif  // BTLRANK_IO_H_
