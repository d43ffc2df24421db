#include "graphot/report.hpp"

#include <cstdio>
#include <sstream>

#include "graphot/error.hpp"
#include "graphot/io.hpp"

namespace graphot {

void ExperimentReport::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw ShapeError("report row width does not match the header");
  rows.push_back(std::move(row));
}

int ExperimentReport::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw ValidationError("report has no column '" + std::string(name) + "'");
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "# experiment=" << id << '\n';
  for (const auto& [key, value] : params) out << "# " << key << '=' << value << '\n';
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  };
  write_row(columns);
  for (const auto& row : rows) write_row(row);
  return out.str();
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t hash) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string input_digest(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1) {
  std::uint64_t h = fnv1a(format_graph(g));
  h = fnv1a(format_values(p0.values()), h);
  h = fnv1a(format_values(p1.values()), h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace graphot
