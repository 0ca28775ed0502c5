#pragma once

#include <cstdint>
#include <vector>

#include "asptk/common.hpp"

namespace asp {

struct LpSolution {
    std::vector<double> primal;  // one value per column
    std::vector<double> duals;   // one value per row
    double objective = 0.0;
    int pivots = 0;
};

// min sum_j z_j  s.t.  sum_{j : row in cols[j]} z_j >= 1 for every row, z >= 0.
// Two-phase revised simplex with an explicit basis inverse (refreshed every 50
// pivots) and Bland's rule. cols[j] lists the rows column j covers, ascending.
LpSolution solve_covering_lp(std::uint32_t n_rows,
                             const std::vector<std::vector<std::uint32_t>>& cols);

} // namespace asp
