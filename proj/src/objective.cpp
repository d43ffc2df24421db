#include <cmath>
#include <sstream>

#include "graphot/advection.hpp"
#include "graphot/error.hpp"
#include "graphot/flow_solver.hpp"
#include "graphot/io.hpp"

namespace graphot {

double objective(const Graph& g, const std::vector<std::vector<double>>& q,
                 const std::vector<FlowField>& flows, int k) {
  if (k < 1) throw ValidationError("number of time steps must be >= 1");
  if (q.size() != static_cast<std::size_t>(k) + 1 || flows.size() != static_cast<std::size_t>(k))
    throw ShapeError("path needs k+1 density samples and k flows");
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) sum += momentum_norm_squared(g, q[i - 1], q[i], flows[i - 1]);
  return k * sum;
}

std::vector<double> per_step_speeds(const Graph& g, const TransportPath& path) {
  std::vector<double> speeds(static_cast<std::size_t>(path.k));
  for (int i = 1; i <= path.k; ++i)
    speeds[i - 1] = path.k * std::sqrt(momentum_norm_squared(g, path.q[i - 1], path.q[i], path.flows[i - 1]));
  return speeds;
}

std::vector<std::vector<double>> trivial_path(const VertexDistribution& p0,
                                              const VertexDistribution& p1, int k) {
  if (k < 1) throw ValidationError("number of time steps must be >= 1");
  if (p0.size() != p1.size()) throw ShapeError("distributions have different sizes");
  std::vector<std::vector<double>> q(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    double s = static_cast<double>(i) / k;
    q[i].resize(static_cast<std::size_t>(p0.size()));
    for (Vertex v = 0; v < p0.size(); ++v) q[i][v] = (1.0 - s) * p0[v] + s * p1[v];
  }
  q[0] = p0.vector();
  q[k] = p1.vector();
  return q;
}

namespace {

std::string rows_csv(const std::vector<std::vector<double>>& rows, char prefix) {
  std::ostringstream out;
  out << 'i';
  std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < width; ++j) out << ',' << prefix << j;
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (prefix == 'e' ? i + 1 : i);
    for (double x : rows[i]) out << ',' << format_exact(x);
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string densities_csv(const std::vector<std::vector<double>>& q) { return rows_csv(q, 'v'); }

std::string flows_csv(const std::vector<FlowField>& flows) { return rows_csv(flows, 'e'); }

std::string path_meta(const Graph& g, const TransportPath& path) {
  std::ostringstream out;
  out << "n " << g.num_vertices() << '\n'
      << "m " << g.num_edges() << '\n'
      << "k " << path.k << '\n'
      << "objective " << format_exact(path.objective) << '\n'
      << "distance " << format_exact(path.distance) << '\n'
      << "method " << to_string(path.report.method) << '\n'
      << "iterations " << path.report.iterations << '\n'
      << "primal_residual " << format_exact(path.report.primal_residual) << '\n'
      << "dual_residual " << format_exact(path.report.dual_residual) << '\n';
  return out.str();
}

void export_path(const std::filesystem::path& dir, const Graph& g, const TransportPath& path) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "meta", path_meta(g, path));
  write_text_file(dir / "q.csv", densities_csv(path.q));
  write_text_file(dir / "J.csv", flows_csv(path.flows));
}

}  // namespace graphot
