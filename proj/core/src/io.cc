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

#include "btlrank/io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "btlrank/error.h"

namespace btlrank {
namespace {

using Json = nlohmann::json;

struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;
};

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits every non-empty, non-comment line; a first line that does not start
// with a number is taken as a header and skipped.
std::vector<CsvRow> ReadCsv(std::istream& in, std::size_t columns) {
  std::vector<CsvRow> rows;
  std::string line;
  int number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (first) {
      first = false;
      const char c = line[0];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) {
        continue;
      }
    }
    CsvRow row{number, {}};
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.fields.push_back(Trim(field));
    if (row.fields.size() != columns) {
      throw InvalidArgumentError("line " + std::to_string(number) + ": expected " +
                                 std::to_string(columns) + " fields: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T ParseField(const CsvRow& row, std::size_t k) {
  const std::string& s = row.fields[k];
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgumentError("line " + std::to_string(row.line) + ": bad field '" + s + "'");
  }
  return value;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BtlError("cannot open " + path);
  return in;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void WriteGraphCsv(std::ostream& out, const ComparisonGraph& graph) {
  out << "i,j,L\n";
  for (const Edge& e : graph.edges()) out << e.i << ',' << e.j << ',' << e.samples << '\n';
}

ComparisonGraph ReadGraphCsv(std::istream& in) { return ReadGraphCsv(in, -1); }

ComparisonGraph ReadGraphCsv(std::istream& in, int num_nodes) {
  std::vector<Edge> edges;
  int max_index = -1;
  for (const CsvRow& row : ReadCsv(in, 3)) {
    Edge e{ParseField<int>(row, 0), ParseField<int>(row, 1), ParseField<int>(row, 2)};
    max_index = std::max({max_index, e.i, e.j});
    edges.push_back(e);
  }
  return ComparisonGraph(num_nodes >= 0 ? num_nodes : max_index + 1, std::move(edges));
}

void WriteDataCsv(std::ostream& out, const ComparisonData& data) {
  out << "i,j,wins,L\n";
  for (const EdgeOutcome& o : data.outcomes()) {
    out << o.i << ',' << o.j << ',' << FormatDouble(o.wins) << ',' << o.samples << '\n';
  }
}

ComparisonData ReadDataCsv(std::istream& in, const ComparisonGraph& graph) {
  std::vector<EdgeOutcome> outcomes(graph.num_edges());
  std::vector<bool> seen(graph.num_edges(), false);
  for (const CsvRow& row : ReadCsv(in, 4)) {
    NodeId i = ParseField<int>(row, 0);
    NodeId j = ParseField<int>(row, 1);
    double wins = ParseField<double>(row, 2);
    const int samples = ParseField<int>(row, 3);
    const auto e = graph.FindEdge(i, j);
    const std::string where = "line " + std::to_string(row.line) + ": ";
    if (!e) throw InvalidArgumentError(where + "pair is not an edge of the graph");
    if (seen[*e]) throw InvalidArgumentError(where + "duplicate edge");
    if (samples != graph.edge(*e).samples) {
      throw InvalidArgumentError(where + "L does not match the graph");
    }
    if (i > j) {
      std::swap(i, j);
      wins = samples - wins;
    }
    seen[*e] = true;
    outcomes[*e] = {i, j, wins, samples};
  }
  for (std::size_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) {
      throw InvalidArgumentError("no outcome for edge (" + std::to_string(graph.edge(e).i) + ", " +
                                 std::to_string(graph.edge(e).j) + ")");
    }
  }
  return ComparisonData(graph, std::move(outcomes));
}

void WriteScoresJson(std::ostream& out, const Eigen::VectorXd& scores) {
  Json array = Json::array();
  for (Eigen::Index i = 0; i < scores.size(); ++i) array.push_back(scores[i]);
  out << array.dump() << '\n';
}

Eigen::VectorXd ReadScoresJson(std::istream& in) {
  Json json;
  try {
    in >> json;
  } catch (const Json::exception& e) {
    throw InvalidArgumentError(std::string("scores: ") + e.what());
  }
  if (!json.is_array()) throw InvalidArgumentError("scores: expected a JSON array of numbers");
  Eigen::VectorXd scores(json.size());
  for (std::size_t i = 0; i < json.size(); ++i) {
    if (!json[i].is_number()) throw InvalidArgumentError("scores: entry " + std::to_string(i));
    scores[i] = json[i].get<double>();
  }
  return scores;
}

void WritePartitionJson(std::ostream& out, const Partition& partition) {
  out << Json(partition.subsets()).dump() << '\n';
}

Partition ReadPartitionJson(std::istream& in, int num_nodes) {
  Json json;
  try {
    in >> json;
  } catch (const Json::exception& e) {
    throw InvalidArgumentError(std::string("partition: ") + e.what());
  }
  Json subsets_json = json;
  std::optional<PartitionMode> mode;
  if (json.is_object()) {
    if (!json.contains("subsets")) throw InvalidArgumentError("partition: missing 'subsets'");
    subsets_json = json["subsets"];
    if (json.contains("mode")) {
      const std::string name = json["mode"].get<std::string>();
      if (name == "overlapping") {
        mode = PartitionMode::kOverlapping;
      } else if (name == "disjoint") {
        mode = PartitionMode::kDisjoint;
      } else {
        throw InvalidArgumentError("partition: unknown mode '" + name + "'");
      }
    }
  }
  std::vector<std::vector<NodeId>> subsets;
  try {
    subsets = subsets_json.get<std::vector<std::vector<NodeId>>>();
  } catch (const Json::exception& e) {
    throw InvalidArgumentError(std::string("partition: ") + e.what());
  }
  if (!mode) {
    std::size_t total = 0;
    for (const auto& s : subsets) total += s.size();
    mode = total == static_cast<std::size_t>(num_nodes) ? PartitionMode::kDisjoint
                                                         : PartitionMode::kOverlapping;
  }
  return Partition(num_nodes, std::move(subsets), *mode);
}

void WriteResistanceCsv(std::ostream& out, const std::map<NodePair, double>& omega) {
  out << "k,l,omega\n";
  for (const auto& [pair, value] : omega) {
    out << pair.k << ',' << pair.l << ',' << FormatDouble(value) << '\n';
  }
}

void WriteBoundsCsv(std::ostream& out, const BoundQuantities& bounds) {
  out << "k,l,omega,B,Q,V\n";
  for (const BoundEntry& e : bounds.entries) {
    out << e.pair.k << ',' << e.pair.l << ',' << FormatDouble(e.omega) << ','
        << FormatDouble(e.b) << ',' << FormatDouble(e.q) << ',' << FormatDouble(e.v) << '\n';
  }
}

void WriteTraceCsv(std::ostream& out, const ConvergenceTrace& trace) {
  out << "iteration,loss,grad_norm,linf_to_reference\n";
  for (const TraceRecord& r : trace.records) {
    out << r.iteration << ',' << FormatDouble(r.loss) << ',' << FormatDouble(r.gradient_norm)
        << ',' << (std::isnan(r.reference_distance) ? "" : FormatDouble(r.reference_distance))
        << '\n';
  }
}

ComparisonGraph LoadGraph(const std::string& path) {
  auto in = OpenInput(path);
  return ReadGraphCsv(in);
}

ComparisonData LoadData(const std::string& path, const ComparisonGraph& graph) {
  auto in = OpenInput(path);
  return ReadDataCsv(in, graph);
}

Eigen::VectorXd LoadScores(const std::string& path) {
  auto in = OpenInput(path);
  return ReadScoresJson(in);
}

Partition LoadPartition(const std::string& path, int num_nodes) {
  auto in = OpenInput(path);
  return ReadPartitionJson(in, num_nodes);
}

}  // namespace btlrank
