#pragma once

#include <vector>

namespace fbmhull {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// maximize c.x subject to rows[i].x <= rhs[i], x free.
// Dense two-phase simplex with Bland's rule; intended for small instances
// (a handful of variables, up to a few hundred constraints).
LpSolution solve_lp_max(const std::vector<double>& c,
                        const std::vector<std::vector<double>>& rows,
                        const std::vector<double>& rhs);

}  // namespace fbmhull
