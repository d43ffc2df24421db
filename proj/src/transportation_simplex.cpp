#include "transportation_simplex.hpp"

#include <algorithm>
#include <limits>

#include "graphot/error.hpp"

namespace graphot::detail {

namespace {

constexpr double kPricingTol = 1e-12;

class Basis {
 public:
  Basis(int rows, int cols) : rows_(rows), cols_(cols), at_(static_cast<std::size_t>(rows) * cols, -1) {}

  void add(int i, int j, double mass) {
    at_[index(i, j)] = static_cast<int>(cells_.size());
    cells_.push_back({i, j, mass});
  }
  std::vector<TransportCell>& cells() { return cells_; }
  int slot(int i, int j) const { return at_[index(i, j)]; }

  void replace(int slot, int i, int j) {
    TransportCell& c = cells_[slot];
    at_[index(c.row, c.col)] = -1;
    c = {i, j, 0.0};
    at_[index(i, j)] = slot;
  }

  // Node ids: rows 0..R-1, columns R..R+C-1. Adjacency lists of basic slots.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(rows_ + cols_));
    for (int s = 0; s < static_cast<int>(cells_.size()); ++s) {
      adj[cells_[s].row].push_back(s);
      adj[rows_ + cells_[s].col].push_back(s);
    }
    return adj;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }
  int rows_, cols_;
  std::vector<int> at_;
  std::vector<TransportCell> cells_;
};

}  // namespace

std::vector<TransportCell> transportation_simplex(const std::vector<double>& supply,
                                                  const std::vector<double>& demand,
                                                  const std::vector<double>& cost) {
  const int rows = static_cast<int>(supply.size()), cols = static_cast<int>(demand.size());
  if (rows == 0 || cols == 0) return {};
  auto c = [&](int i, int j) { return cost[static_cast<std::size_t>(i) * cols + j]; };

  // Northwest corner: exactly rows + cols - 1 cells, degenerate ones included.
  Basis basis(rows, cols);
  {
    std::vector<double> s = supply, d = demand;
    int i = 0, j = 0;
    while (i < rows && j < cols) {
      double x = std::max(0.0, std::min(s[i], d[j]));
      if (i == rows - 1) x = std::max(0.0, d[j]);
      if (j == cols - 1) x = std::max(0.0, s[i]);
      basis.add(i, j, x);
      s[i] -= x;
      d[j] -= x;
      if (i == rows - 1 && j == cols - 1) break;
      if ((s[i] <= d[j] && i < rows - 1) || j == cols - 1)
        ++i;
      else
        ++j;
    }
  }

  const int nodes = rows + cols;
  std::vector<double> u(static_cast<std::size_t>(rows)), v(static_cast<std::size_t>(cols));
  std::vector<int> parent_slot(static_cast<std::size_t>(nodes)), order;
  std::vector<char> seen(static_cast<std::size_t>(nodes));
  const long max_pivots = 50L * (rows + cols) * std::max(rows, cols) + 1000;

  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots) throw Error("transportation simplex exceeded its pivot budget");
    auto adj = basis.adjacency();
    const auto& cells = basis.cells();

    // Duals from the spanning tree rooted at row 0: u_i + v_j = c_ij on basic cells.
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(parent_slot.begin(), parent_slot.end(), -1);
    order.assign(1, 0);
    seen[0] = 1;
    u[0] = 0.0;
    for (std::size_t h = 0; h < order.size(); ++h) {
      int node = order[h];
      for (int s : adj[node]) {
        int other = node < rows ? rows + cells[s].col : cells[s].row;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_slot[other] = s;
        if (other >= rows)
          v[other - rows] = c(cells[s].row, cells[s].col) - u[cells[s].row];
        else
          u[other] = c(cells[s].row, cells[s].col) - v[cells[s].col];
        order.push_back(other);
      }
    }
    if (static_cast<int>(order.size()) != nodes) throw Error("transportation basis is not a spanning tree");

    // Bland: first nonbasic cell with negative reduced cost.
    int ei = -1, ej = -1;
    for (int i = 0; i < rows && ei < 0; ++i)
      for (int j = 0; j < cols; ++j)
        if (basis.slot(i, j) < 0 && c(i, j) - u[i] - v[j] < -kPricingTol * std::max(1.0, std::abs(c(i, j)))) {
          ei = i;
          ej = j;
          break;
        }
    if (ei < 0) break;

    // Cycle: tree path from column node ej to row node ei, closed by (ei, ej).
    std::vector<int> depth(static_cast<std::size_t>(nodes), 0);
    for (int node : order)
      if (parent_slot[node] >= 0) {
        const auto& cell = cells[parent_slot[node]];
        int up = node < rows ? rows + cell.col : cell.row;
        depth[node] = depth[up] + 1;
      }
    auto parent_of = [&](int node) {
      const auto& cell = cells[parent_slot[node]];
      return node < rows ? rows + cell.col : cell.row;
    };
    std::vector<int> path_a, path_b;  // slots from each end up to the meeting node
    int a = rows + ej, b = ei;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        path_a.push_back(parent_slot[a]);
        a = parent_of(a);
      } else {
        path_b.push_back(parent_slot[b]);
        b = parent_of(b);
      }
    }
    // Cycle order: (ei,ej)+, then along the path from column ej to row ei
    // with alternating signs starting with minus.
    std::vector<int> cycle = path_a;
    cycle.insert(cycle.end(), path_b.rbegin(), path_b.rend());

    // Ties go to the lowest cell index, as Bland's rule requires.
    auto cell_index = [&](int slot) {
      return static_cast<long>(cells[slot].row) * cols + cells[slot].col;
    };
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t p = 0; p < cycle.size(); p += 2) {
      double m = cells[cycle[p]].mass;
      if (m < theta || (m == theta && cell_index(cycle[p]) < cell_index(leave))) {
        theta = m;
        leave = cycle[p];
      }
    }
    auto& mutable_cells = basis.cells();
    for (std::size_t p = 0; p < cycle.size(); ++p)
      mutable_cells[cycle[p]].mass += (p % 2 == 0 ? -theta : theta);
    basis.replace(leave, ei, ej);
    mutable_cells[leave].mass = theta;
  }

  std::vector<TransportCell> out;
  for (const auto& cell : basis.cells())
    if (cell.mass > 0.0) out.push_back(cell);
  return out;
}

}  // namespace graphot::detail
