#include "graphot/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphot/error.hpp"

namespace graphot {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-comment, non-blank lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    auto tokens = split_ws(raw);
    if (!tokens.empty() && tokens.front().front() != '#') lines.push_back({number, tokens});
    pos = end + 1;
  }
  return lines;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw FormatError("expected an integer, got '" + std::string(tok) + "'", line);
  return value;
}

double parse_double(std::string_view tok, std::size_t line) {
  std::string s(tok);
  char* end = nullptr;
  double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw FormatError("expected a number, got '" + s + "'", line);
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw FormatError("missing header line 'n m'", 0);
  const Line& header = lines.front();
  if (header.tokens.size() != 2) throw FormatError("header must be 'n m'", header.number);
  long long n = parse_int(header.tokens[0], header.number);
  long long m = parse_int(header.tokens[1], header.number);
  if (n < 1 || m < 0) throw FormatError("header counts out of range", header.number);
  if (static_cast<long long>(lines.size()) - 1 != m)
    throw FormatError("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(lines.size() - 1),
                      lines.size() > 1 ? lines.back().number : header.number);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 2) throw FormatError("edge line must be 'u v'", l.number);
    long long u = parse_int(l.tokens[0], l.number);
    long long v = parse_int(l.tokens[1], l.number);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw FormatError("vertex id outside [0," + std::to_string(n) + ")", l.number);
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<double> parse_values(std::string_view text, int expected_size) {
  auto lines = content_lines(text);
  std::vector<double> values;
  values.reserve(lines.size());
  for (const Line& l : lines) {
    if (l.tokens.size() != 1) throw FormatError("expected one value per line", l.number);
    values.push_back(parse_double(l.tokens[0], l.number));
  }
  if (expected_size >= 0 && static_cast<int>(values.size()) != expected_size)
    throw FormatError("expected " + std::to_string(expected_size) + " values, found " +
                          std::to_string(values.size()),
                      lines.empty() ? 0 : lines.back().number);
  return values;
}

VertexDistribution parse_distribution(std::string_view text, int expected_size) {
  return VertexDistribution(parse_values(text, expected_size));
}

FlowField parse_flow(std::string_view text, const Graph& g) {
  return parse_values(text, g.num_oriented_edges());
}

std::string format_values(std::span<const double> values) {
  std::string out;
  for (double x : values) {
    out += format_exact(x);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << contents;
}

Graph load_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

VertexDistribution load_distribution(const std::filesystem::path& path, const Graph& g) {
  return parse_distribution(read_text_file(path), g.num_vertices());
}

FlowField load_flow(const std::filesystem::path& path, const Graph& g) {
  return parse_flow(read_text_file(path), g);
}

std::string format_fixed(double x, int precision) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  // Avoid printing "-0.000000".
  double threshold = 0.5 * std::pow(10.0, -precision);
  if (std::abs(x) < threshold) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

std::string format_exact(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace graphot
