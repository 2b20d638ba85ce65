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

#ifndef BTLRANK_GRAPH_H_
#define BTLRANK_GRAPH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "btlrank/rng.h"

namespace btlrank {

using NodeId = int;

// An undirected comparison edge with i < j and `samples` = L_ij >= 1
// independent comparisons collected on it.
struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  int samples = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// The measurement design: nodes 0..n-1 and the edges on which comparisons
// were collected. Immutable after construction; the constructor enforces
// i != j, no duplicates and samples >= 1, and normalizes each edge to i < j
// while keeping the caller's edge order.
class ComparisonGraph {
 public:
  struct Incidence {
    NodeId neighbor;
    int edge;
  };

  ComparisonGraph() = default;
  ComparisonGraph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::span<const Incidence> neighbors(NodeId v) const;
  int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  bool connected() const { return connected_; }
  // Sum of L_ij over all edges.
  std::int64_t total_samples() const { return total_samples_; }
  // Index of edge {a, b} in edges(), if present.
  std::optional<int> FindEdge(NodeId a, NodeId b) const;

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Incidence> incidences_;
  std::unordered_map<std::uint64_t, int> index_;
  bool connected_ = true;
  std::int64_t total_samples_ = 0;
};

// True iff the undirected graph on `num_nodes` nodes with the given edge
// endpoints is connected (a graph with <= 1 node is connected).
bool IsConnected(int num_nodes, std::span<const std::pair<NodeId, NodeId>> edges);

enum class GridKind { k1D, k2D };

// Locality graph parameters: pairs within distance `radius` (absolute index
// difference in 1D, Manhattan distance in 2D) are compared with probability p.
struct GridSpec {
  GridKind kind = GridKind::k1D;
  int n = 0;
  int radius = 1;
  double p = 1.0;

  // Throws InvalidArgumentError unless n >= 1, radius >= 1, 0 < p <= 1 and,
  // for 2D grids, n is a perfect square.
  void Validate() const;
  // Side length of a 2D grid (n for 1D grids).
  int side() const;
};

// Either a constant L for every edge or a callback producing L_ij.
using SampleCountPolicy = std::variant<int, std::function<int(NodeId, NodeId)>>;

// Grid1D / Grid2D locality graph. 2D nodes are flattened row-major,
// index = i1 * side + i2. With p == 1 the rng is not consumed.
ComparisonGraph GenerateGrid(const GridSpec& spec, const SampleCountPolicy& samples,
                             Rng& rng);

enum class SpecialKind { kErdosRenyi, kLine, kRing, kComplete, kBarbell, kTree };

struct SpecialParams {
  int n = 0;            // node count (er, line, ring, complete, tree)
  double p = 1.0;       // er edge probability
  int samples = 1;      // L on every ordinary edge
  int clique_a = 0;     // barbell left clique size
  int clique_b = 0;     // barbell right clique size
  int bridge_samples = 1;
};

// Named topologies. Barbell nodes 0..a-1 form the left clique, a..a+b-1 the
// right one, bridged by (a-1, a). Tree is a uniform labelled tree (random
// Pruefer code). An Erdos-Renyi draw may be disconnected; check connected().
ComparisonGraph GenerateSpecial(SpecialKind kind, const SpecialParams& params, Rng& rng);

enum class PartitionMode { kOverlapping, kDisjoint };

// Node subsets V_(0..m-1) covering 0..n-1. Each subset is sorted.
class Partition {
 public:
  Partition(int num_nodes, std::vector<std::vector<NodeId>> subsets, PartitionMode mode);

  int num_nodes() const { return num_nodes_; }
  int size() const { return static_cast<int>(subsets_.size()); }
  const std::vector<std::vector<NodeId>>& subsets() const { return subsets_; }
  const std::vector<NodeId>& subset(int a) const { return subsets_[a]; }
  PartitionMode mode() const { return mode_; }
  // s_i: number of subsets containing node i.
  int membership(NodeId i) const { return membership_[i]; }
  const std::vector<int>& memberships() const { return membership_; }
  int max_membership() const { return max_membership_; }
  // Subsets containing node i, ascending.
  const std::vector<int>& owners(NodeId i) const { return owners_[i]; }

 private:
  int num_nodes_;
  std::vector<std::vector<NodeId>> subsets_;
  PartitionMode mode_;
  std::vector<int> membership_;
  std::vector<std::vector<int>> owners_;
  int max_membership_ = 0;
};

// A super-edge (a, b), a < b. `overlap` is V_(a) cap V_(b) for overlapping
// partitions; `cross_edges` indexes graph edges with one endpoint in each
// subset for disjoint partitions.
struct SuperEdge {
  int a = 0;
  int b = 0;
  std::vector<NodeId> overlap;
  std::vector<int> cross_edges;
};

class SuperGraph {
 public:
  // Overlap super-edges for overlapping partitions, cross-edge super-edges
  // for disjoint ones. A super-edge exists iff its payload is non-empty.
  static SuperGraph Build(const ComparisonGraph& graph, const Partition& partition);

  int num_super_nodes() const { return num_super_nodes_; }
  const std::vector<SuperEdge>& edges() const { return edges_; }
  bool connected() const { return connected_; }

 private:
  int num_super_nodes_ = 0;
  std::vector<SuperEdge> edges_;
  bool connected_ = true;
};

struct GridPartition {
  Partition partition;
  SuperGraph super_graph;
};

// Contiguous windows [begin, end) over 0..length-1 of the given width and
// stride; the last window absorbs any tail, and length < width yields a
// single window.
std::vector<std::pair<int, int>> GridWindows(int length, int width, int stride);

// Window partition of a grid graph: width 2r with stride r (overlapping) or
// stride 2r (disjoint) along each axis.
GridPartition PartitionGrid(const ComparisonGraph& graph, const GridSpec& spec,
                            PartitionMode mode);

// E_(a): indices of graph edges with both endpoints in subset a.
std::vector<std::vector<int>> SubgraphEdges(const ComparisonGraph& graph,
                                            const Partition& partition);

}  // namespace btlrank

#endif  // BTLRANK_GRAPH_H_
