#pragma once

#include <vector>

namespace graphot::detail {

struct TransportCell {
  int row;
  int col;
  double mass;
};

/// Transportation simplex (northwest-corner start, MODI pricing, Bland's rule)
/// for  min sum cost[i][j] x_ij  s.t. row sums = supply, column sums = demand.
/// All supplies and demands must be positive. `cost` is row-major rows x cols.
/// Returns the basic cells with positive mass.
std::vector<TransportCell> transportation_simplex(const std::vector<double>& supply,
                                                  const std::vector<double>& demand,
                                                  const std::vector<double>& cost);

}  // namespace graphot::detail
