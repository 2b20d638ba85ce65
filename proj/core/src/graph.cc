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

#include "btlrank/graph.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "btlrank/error.h"

namespace btlrank {
namespace {

std::uint64_t PairKey(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

int SamplesFor(const SampleCountPolicy& policy, NodeId i, NodeId j) {
  if (const int* constant = std::get_if<int>(&policy)) return *constant;
  return std::get<std::function<int(NodeId, NodeId)>>(policy)(i, j);
}

int IntegerSqrt(int n) {
  int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

}  // namespace

ComparisonGraph::ComparisonGraph(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 0) throw InvalidArgumentError("negative node count");
  index_.reserve(edges_.size() * 2);
  std::vector<int> degree(num_nodes_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Edge& edge = edges_[e];
    if (edge.i > edge.j) std::swap(edge.i, edge.j);
    if (edge.i < 0 || edge.j >= num_nodes_) {
      throw InvalidArgumentError("edge (" + std::to_string(edge.i) + ", " +
                                 std::to_string(edge.j) + ") out of range for n = " +
                                 std::to_string(num_nodes_));
    }
    if (edge.i == edge.j) {
      throw InvalidArgumentError("self-loop on node " + std::to_string(edge.i));
    }
    if (edge.samples < 1) {
      throw InvalidArgumentError("edge (" + std::to_string(edge.i) + ", " +
                                 std::to_string(edge.j) + ") has L < 1");
    }
    if (!index_.emplace(PairKey(edge.i, edge.j), static_cast<int>(e)).second) {
      throw InvalidArgumentError("duplicate edge (" + std::to_string(edge.i) + ", " +
                                 std::to_string(edge.j) + ")");
    }
    ++degree[edge.i];
    ++degree[edge.j];
    total_samples_ += edge.samples;
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (int v = 0; v < num_nodes_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  incidences_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    incidences_[fill[edge.i]++] = {edge.j, static_cast<int>(e)};
    incidences_[fill[edge.j]++] = {edge.i, static_cast<int>(e)};
  }

  std::vector<std::pair<NodeId, NodeId>> endpoints;
  endpoints.reserve(edges_.size());
  for (const Edge& edge : edges_) endpoints.emplace_back(edge.i, edge.j);
  connected_ = IsConnected(num_nodes_, endpoints);
}

std::span<const ComparisonGraph::Incidence> ComparisonGraph::neighbors(NodeId v) const {
  return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
}

int ComparisonGraph::max_degree() const {
  int best = 0;
  for (int v = 0; v < num_nodes_; ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<int> ComparisonGraph::FindEdge(NodeId a, NodeId b) const {
  auto it = index_.find(PairKey(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool IsConnected(int num_nodes, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (num_nodes <= 1) return true;
  DisjointSets sets(num_nodes);
  int components = num_nodes;
  for (const auto& [a, b] : edges) {
    if (sets.Union(a, b)) --components;
  }
  return components == 1;
}

void GridSpec::Validate() const {
  if (n < 1) throw InvalidArgumentError("grid needs n >= 1");
  if (radius < 1) throw InvalidArgumentError("grid needs radius >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgumentError("grid needs 0 < p <= 1");
  if (kind == GridKind::k2D) {
    int s = IntegerSqrt(n);
    if (s * s != n) {
      throw InvalidArgumentError("Grid2D needs a perfect-square n, got " + std::to_string(n));
    }
  }
}

int GridSpec::side() const { return kind == GridKind::k2D ? IntegerSqrt(n) : n; }

ComparisonGraph GenerateGrid(const GridSpec& spec, const SampleCountPolicy& samples, Rng& rng) {
  spec.Validate();
  const bool keep_all = spec.p >= 1.0;
  std::vector<Edge> edges;
  auto consider = [&](NodeId a, NodeId b) {
    if (keep_all || rng.Bernoulli(spec.p)) edges.push_back({a, b, SamplesFor(samples, a, b)});
  };

  if (spec.kind == GridKind::k1D) {
    for (NodeId i = 0; i < spec.n; ++i) {
      for (NodeId j = i + 1; j <= std::min(spec.n - 1, i + spec.radius); ++j) consider(i, j);
    }
  } else {
    const int side = spec.side();
    const int r = spec.radius;
    for (int i1 = 0; i1 < side; ++i1) {
      for (int i2 = 0; i2 < side; ++i2) {
        const NodeId u = i1 * side + i2;
        // Neighbours with a larger flat index: same row to the right, or any
        // later row within the Manhattan ball.
        for (int d1 = 0; d1 <= r && i1 + d1 < side; ++d1) {
          const int reach = r - d1;
          const int lo = d1 == 0 ? 1 : -reach;
          for (int d2 = lo; d2 <= reach; ++d2) {
            const int j2 = i2 + d2;
            if (j2 < 0 || j2 >= side) continue;
            consider(u, (i1 + d1) * side + j2);
          }
        }
      }
    }
  }
  return ComparisonGraph(spec.n, std::move(edges));
}

ComparisonGraph GenerateSpecial(SpecialKind kind, const SpecialParams& params, Rng& rng) {
  std::vector<Edge> edges;
  const int L = params.samples;
  switch (kind) {
    case SpecialKind::kErdosRenyi: {
      if (params.n < 1 || !(params.p >= 0.0 && params.p <= 1.0)) {
        throw InvalidArgumentError("Erdos-Renyi needs n >= 1 and 0 <= p <= 1");
      }
      for (NodeId i = 0; i < params.n; ++i) {
        for (NodeId j = i + 1; j < params.n; ++j) {
          if (rng.Bernoulli(params.p)) edges.push_back({i, j, L});
        }
      }
      return ComparisonGraph(params.n, std::move(edges));
    }
    case SpecialKind::kLine:
      if (params.n < 1) throw InvalidArgumentError("line needs n >= 1");
      for (NodeId i = 0; i + 1 < params.n; ++i) edges.push_back({i, i + 1, L});
      return ComparisonGraph(params.n, std::move(edges));
    case SpecialKind::kRing:
      if (params.n < 3) throw InvalidArgumentError("ring needs n >= 3");
      for (NodeId i = 0; i + 1 < params.n; ++i) edges.push_back({i, i + 1, L});
      edges.push_back({0, params.n - 1, L});
      return ComparisonGraph(params.n, std::move(edges));
    case SpecialKind::kComplete:
      if (params.n < 1) throw InvalidArgumentError("complete graph needs n >= 1");
      for (NodeId i = 0; i < params.n; ++i) {
        for (NodeId j = i + 1; j < params.n; ++j) edges.push_back({i, j, L});
      }
      return ComparisonGraph(params.n, std::move(edges));
    case SpecialKind::kBarbell: {
      const int a = params.clique_a;
      const int b = params.clique_b;
      if (a < 1 || b < 1) throw InvalidArgumentError("barbell needs two non-empty cliques");
      for (NodeId i = 0; i < a; ++i) {
        for (NodeId j = i + 1; j < a; ++j) edges.push_back({i, j, L});
      }
      for (NodeId i = a; i < a + b; ++i) {
        for (NodeId j = i + 1; j < a + b; ++j) edges.push_back({i, j, L});
      }
      edges.push_back({a - 1, a, params.bridge_samples});
      return ComparisonGraph(a + b, std::move(edges));
    }
    case SpecialKind::kTree: {
      const int n = params.n;
      if (n < 1) throw InvalidArgumentError("tree needs n >= 1");
      if (n == 2) edges.push_back({0, 1, L});
      if (n > 2) {
        std::vector<int> code(n - 2);
        for (int& c : code) c = static_cast<int>(rng.UniformInt(n));
        std::vector<int> degree(n, 1);
        for (int c : code) ++degree[c];
        std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
        for (int v = 0; v < n; ++v) {
          if (degree[v] == 1) leaves.push(v);
        }
        for (int c : code) {
          int leaf = leaves.top();
          leaves.pop();
          edges.push_back({leaf, c, L});
          if (--degree[c] == 1) leaves.push(c);
        }
        int u = leaves.top();
        leaves.pop();
        int v = leaves.top();
        edges.push_back({u, v, L});
      }
      return ComparisonGraph(n, std::move(edges));
    }
  }
  throw InvalidArgumentError("unknown graph kind");
}

Partition::Partition(int num_nodes, std::vector<std::vector<NodeId>> subsets, PartitionMode mode)
    : num_nodes_(num_nodes), subsets_(std::move(subsets)), mode_(mode) {
  membership_.assign(num_nodes_, 0);
  owners_.assign(num_nodes_, {});
  for (std::size_t a = 0; a < subsets_.size(); ++a) {
    auto& subset = subsets_[a];
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
      throw InvalidArgumentError("subset " + std::to_string(a) + " repeats a node");
    }
    if (subset.empty()) throw InvalidArgumentError("subset " + std::to_string(a) + " is empty");
    for (NodeId i : subset) {
      if (i < 0 || i >= num_nodes_) {
        throw InvalidArgumentError("subset " + std::to_string(a) + " has node " +
                                   std::to_string(i) + " out of range");
      }
      ++membership_[i];
      owners_[i].push_back(static_cast<int>(a));
    }
  }
  for (NodeId i = 0; i < num_nodes_; ++i) {
    if (membership_[i] == 0) {
      throw InvalidArgumentError("node " + std::to_string(i) + " is not covered by the partition");
    }
    if (mode_ == PartitionMode::kDisjoint && membership_[i] > 1) {
      throw InvalidArgumentError("node " + std::to_string(i) +
                                 " appears in several subsets of a disjoint partition");
    }
    max_membership_ = std::max(max_membership_, membership_[i]);
  }
}

SuperGraph SuperGraph::Build(const ComparisonGraph& graph, const Partition& partition) {
  if (graph.num_nodes() != partition.num_nodes()) {
    throw InvalidArgumentError("partition and graph disagree on the node count");
  }
  SuperGraph result;
  result.num_super_nodes_ = partition.size();
  std::map<std::pair<int, int>, SuperEdge> by_pair;
  auto slot = [&](int a, int b) -> SuperEdge& {
    if (a > b) std::swap(a, b);
    SuperEdge& edge = by_pair[{a, b}];
    edge.a = a;
    edge.b = b;
    return edge;
  };

  if (partition.mode() == PartitionMode::kOverlapping) {
    for (NodeId i = 0; i < partition.num_nodes(); ++i) {
      const auto& owners = partition.owners(i);
      for (std::size_t x = 0; x < owners.size(); ++x) {
        for (std::size_t y = x + 1; y < owners.size(); ++y) {
          slot(owners[x], owners[y]).overlap.push_back(i);
        }
      }
    }
  } else {
    for (std::size_t e = 0; e < graph.num_edges(); ++e) {
      const Edge& edge = graph.edge(e);
      const int a = partition.owners(edge.i).front();
      const int b = partition.owners(edge.j).front();
      if (a != b) slot(a, b).cross_edges.push_back(static_cast<int>(e));
    }
  }

  std::vector<std::pair<NodeId, NodeId>> endpoints;
  for (auto& [key, edge] : by_pair) {
    endpoints.emplace_back(edge.a, edge.b);
    result.edges_.push_back(std::move(edge));
  }
  result.connected_ = IsConnected(result.num_super_nodes_, endpoints);
  return result;
}

std::vector<std::pair<int, int>> GridWindows(int length, int width, int stride) {
  if (length <= width) return {{0, length}};
  std::vector<std::pair<int, int>> windows;
  const int count = (length - width) / stride + 1;
  for (int k = 0; k < count; ++k) windows.emplace_back(k * stride, k * stride + width);
  windows.back().second = length;
  return windows;
}

GridPartition PartitionGrid(const ComparisonGraph& graph, const GridSpec& spec,
                            PartitionMode mode) {
  spec.Validate();
  if (graph.num_nodes() != spec.n) {
    throw InvalidArgumentError("graph was not generated from this grid spec");
  }
  const int width = 2 * spec.radius;
  const int stride = mode == PartitionMode::kOverlapping ? spec.radius : width;
  const int side = spec.side();
  const auto windows = GridWindows(side, width, stride);

  std::vector<std::vector<NodeId>> subsets;
  if (spec.kind == GridKind::k1D) {
    for (const auto& [begin, end] : windows) {
      std::vector<NodeId> subset(end - begin);
      std::iota(subset.begin(), subset.end(), begin);
      subsets.push_back(std::move(subset));
    }
  } else {
    for (const auto& [row_begin, row_end] : windows) {
      for (const auto& [col_begin, col_end] : windows) {
        std::vector<NodeId> subset;
        for (int i1 = row_begin; i1 < row_end; ++i1) {
          for (int i2 = col_begin; i2 < col_end; ++i2) subset.push_back(i1 * side + i2);
        }
        subsets.push_back(std::move(subset));
      }
    }
  }
  Partition partition(spec.n, std::move(subsets), mode);
  SuperGraph super_graph = SuperGraph::Build(graph, partition);
  return {std::move(partition), std::move(super_graph)};
}

std::vector<std::vector<int>> SubgraphEdges(const ComparisonGraph& graph,
                                            const Partition& partition) {
  std::vector<std::vector<int>> result(partition.size());
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    const auto& oi = partition.owners(edge.i);
    const auto& oj = partition.owners(edge.j);
    // Both owner lists are sorted; common owners contain the edge.
    std::size_t x = 0, y = 0;
    while (x < oi.size() && y < oj.size()) {
      if (oi[x] < oj[y]) {
        ++x;
      } else if (oj[y] < oi[x]) {
        ++y;
      } else {
        result[oi[x]].push_back(static_cast<int>(e));
        ++x;
        ++y;
      }
    }
  }
  return result;
}

}  // namespace btlrank
