#include "fbmhull/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace fbmhull {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-9;

// Dense tableau for max problems in equality standard form with column
// classes: structural (split u-v), slack, artificial.
struct Tableau {
  std::size_t m, cols;             // rows, total columns incl. rhs
  std::vector<double> t;           // m x cols
  std::vector<double> obj;         // cols (objective row: coeffs + value in rhs slot)
  std::vector<int> basis;          // per row, column index
  std::vector<bool> allowed;       // per column, eligible to enter

  double& at(std::size_t r, std::size_t c) { return t[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * cols + c]; }
  std::size_t rhs() const { return cols - 1; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pivot_val = at(pr, pc);
    for (std::size_t c = 0; c < cols; ++c) at(pr, c) /= pivot_val;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    const double f = obj[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c < cols; ++c) obj[c] -= f * at(pr, c);
      obj[pc] = 0.0;
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Bland's rule simplex on the current objective row (maximization).
  // Returns false when the problem is unbounded.
  bool run() {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t c = 0; c + 1 < cols; ++c) {
        if (allowed[c] && obj[c] > kCostEps) {
          enter = c;
          break;
        }
      }
      if (enter == cols) return true;  // optimal
      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        const double a = at(r, enter);
        if (a > kPivotEps) {
          const double ratio = at(r, rhs()) / a;
          if (ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 &&
               (leave == m || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_lp_max(const std::vector<double>& c,
                        const std::vector<std::vector<double>>& rows,
                        const std::vector<double>& rhs) {
  const std::size_t nvar = c.size();
  const std::size_t m = rhs.size();
  if (rows.size() != m) throw std::invalid_argument("solve_lp_max: rows/rhs mismatch");

  // Columns: u (nvar), v (nvar), slack (m), artificial (m), rhs.
  const std::size_t nu = nvar, nv = nvar;
  const std::size_t slack0 = nu + nv;
  const std::size_t art0 = slack0 + m;
  const std::size_t cols = art0 + m + 1;

  Tableau tb;
  tb.m = m;
  tb.cols = cols;
  tb.t.assign(m * cols, 0.0);
  tb.obj.assign(cols, 0.0);
  tb.basis.resize(m);
  tb.allowed.assign(cols, true);

  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != nvar) throw std::invalid_argument("solve_lp_max: row size mismatch");
    const double sign = rhs[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nvar; ++j) {
      tb.at(r, j) = sign * rows[r][j];
      tb.at(r, nu + j) = -sign * rows[r][j];
    }
    tb.at(r, slack0 + r) = sign;
    tb.at(r, art0 + r) = 1.0;
    tb.at(r, tb.rhs()) = sign * rhs[r];
    tb.basis[r] = static_cast<int>(art0 + r);
  }

  // Phase 1: maximize -(sum of artificials). Price out the basic artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t col = 0; col < cols; ++col) tb.obj[col] += tb.at(r, col);
  }
  for (std::size_t r = 0; r < m; ++r) tb.obj[art0 + r] = 0.0;
  if (!tb.run()) throw std::logic_error("solve_lp_max: phase 1 unbounded");
  // The objective-row rhs cell carries -Z; phase 1 is feasible iff the
  // artificial sum reaches zero.
  if (tb.obj[tb.rhs()] > 1e-7) {
    return {LpStatus::Infeasible, 0.0, {}};
  }

  // Remove artificials: pivot basic ones out where possible, drop columns.
  for (std::size_t r = 0; r < m; ++r) {
    if (static_cast<std::size_t>(tb.basis[r]) >= art0) {
      std::size_t enter = cols;
      for (std::size_t cjump = 0; cjump < art0; ++cjump) {
        if (std::abs(tb.at(r, cjump)) > kPivotEps) {
          enter = cjump;
          break;
        }
      }
      if (enter != cols) tb.pivot(r, enter);
      // Otherwise the row is redundant; its artificial stays basic at zero
      // and is never allowed to grow because the column is disabled below.
    }
  }
  for (std::size_t r = 0; r < m; ++r) tb.allowed[art0 + r] = false;

  // Phase 2: the real objective, priced out over the current basis.
  std::fill(tb.obj.begin(), tb.obj.end(), 0.0);
  for (std::size_t j = 0; j < nvar; ++j) {
    tb.obj[j] = c[j];
    tb.obj[nu + j] = -c[j];
  }
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = static_cast<std::size_t>(tb.basis[r]);
    const double cb = tb.obj[bc];
    if (cb == 0.0) continue;
    for (std::size_t col = 0; col < cols; ++col) tb.obj[col] -= cb * tb.at(r, col);
    tb.obj[bc] = 0.0;
  }
  // Note: obj rhs slot now holds -(objective value).
  if (!tb.run()) return {LpStatus::Unbounded, 0.0, {}};

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  std::vector<double> z(slack0, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = static_cast<std::size_t>(tb.basis[r]);
    if (bc < slack0) z[bc] = tb.at(r, tb.rhs());
  }
  sol.x.resize(nvar);
  double value = 0.0;
  for (std::size_t j = 0; j < nvar; ++j) {
    sol.x[j] = z[j] - z[nu + j];
    value += c[j] * sol.x[j];
  }
  sol.value = value;
  return sol;
}

}  // namespace fbmhull
