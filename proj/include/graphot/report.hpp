#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

/// Tabular experiment output. CSV form: "# key=value" lines for the id and
/// parameters, then a header row and data rows.
struct ExperimentReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_param(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
  void add_row(std::vector<std::string> row);
  /// Column index by name; throws ValidationError when absent.
  int column(std::string_view name) const;
  std::string to_csv() const;
};

std::uint64_t fnv1a(std::string_view data, std::uint64_t hash = 0xcbf29ce484222325ULL);
/// 16 hex digits of the FNV-1a hash of the canonical graph text and the
/// exact values of both distributions.
std::string input_digest(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1);

}  // namespace graphot
