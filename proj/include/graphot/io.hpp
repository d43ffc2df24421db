#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

// Text formats. Blank lines and lines starting with '#' are ignored everywhere.
//
//   graph:         "n m" then m lines "u v" (0-based vertex ids)
//   distribution:  n lines, one value each, graph vertex order
//   flow:          2m lines, canonical oriented-edge order

Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

/// `expected_size` < 0 accepts any length.
VertexDistribution parse_distribution(std::string_view text, int expected_size = -1);
std::vector<double> parse_values(std::string_view text, int expected_size = -1);
FlowField parse_flow(std::string_view text, const Graph& g);

/// One value per line, printed with 17 significant digits.
std::string format_values(std::span<const double> values);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

Graph load_graph(const std::filesystem::path& path);
VertexDistribution load_distribution(const std::filesystem::path& path, const Graph& g);
FlowField load_flow(const std::filesystem::path& path, const Graph& g);

/// Fixed-point formatting used by every report and CLI line.
std::string format_fixed(double x, int precision = 6);
/// Shortest round-trippable representation ("inf" for +infinity).
std::string format_exact(double x);

}  // namespace graphot
