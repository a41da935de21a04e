#include "fbmhull/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fbmhull/lp.hpp"

namespace fbmhull {

namespace {

// Margin LP on one face of the direction cube: u_axis fixed to sign, the
// remaining components in [-1,1], maximize the separation margin s with
// <q, u> + s <= 0 for each translated point q.
struct FaceLp {
  std::vector<double> u;
  double margin = -std::numeric_limits<double>::infinity();
};

FaceLp solve_face(std::span<const double> pts, int dim, const std::vector<std::size_t>& subset,
                  int axis, double sign) {
  const std::size_t nfree = static_cast<std::size_t>(dim - 1);
  const std::size_t nvar = nfree + 1;  // free u components + s
  std::vector<double> c(nvar, 0.0);
  c[nfree] = 1.0;  // maximize s

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  rows.reserve(subset.size() + 2 * nfree);
  rhs.reserve(subset.size() + 2 * nfree);

  for (std::size_t idx : subset) {
    const double* q = pts.data() + idx * static_cast<std::size_t>(dim);
    std::vector<double> row(nvar, 0.0);
    std::size_t slot = 0;
    for (int j = 0; j < dim; ++j) {
      if (j == axis) continue;
      row[slot++] = q[j];
    }
    row[nfree] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(-sign * q[axis]);
  }
  for (std::size_t j = 0; j < nfree; ++j) {
    std::vector<double> hi(nvar, 0.0), lo(nvar, 0.0);
    hi[j] = 1.0;
    lo[j] = -1.0;
    rows.push_back(std::move(hi));
    rhs.push_back(1.0);
    rows.push_back(std::move(lo));
    rhs.push_back(1.0);
  }

  const LpSolution sol = solve_lp_max(c, rows, rhs);
  FaceLp out;
  if (sol.status != LpStatus::Optimal) return out;
  out.margin = sol.value;
  out.u.assign(static_cast<std::size_t>(dim), 0.0);
  std::size_t slot = 0;
  for (int j = 0; j < dim; ++j) {
    out.u[static_cast<std::size_t>(j)] = (j == axis) ? sign : sol.x[slot++];
  }
  return out;
}

}  // namespace

std::optional<std::vector<double>> separating_direction(std::span<const double> points_flat,
                                                        int dim, std::span<const double> x,
                                                        double rel_tol) {
  if (dim < 1) throw std::invalid_argument("separating_direction: dim must be positive");
  if (points_flat.size() % static_cast<std::size_t>(dim) != 0 ||
      x.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("separating_direction: size mismatch");
  }
  const std::size_t n = points_flat.size() / static_cast<std::size_t>(dim);
  if (n == 0) throw std::invalid_argument("separating_direction: empty point set");

  // Translated cloud q = p - x.
  std::vector<double> q(points_flat.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double v = points_flat[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)];
      q[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] = v;
      scale = std::max(scale, std::abs(v));
    }
  }
  const double tol = rel_tol * scale;

  auto support = [&](const std::vector<double>& u) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int j = 0; j < dim; ++j) {
        dot += q[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
      }
      if (dot > best) {
        best = dot;
        arg = i;
      }
    }
    return std::make_pair(best, arg);
  };
  auto normalized = [&](std::vector<double> u) {
    double norm = 0.0;
    for (double v : u) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : u) v /= norm;
    return u;
  };

  if (scale == 0.0) {
    // Every point coincides with x; x is its own (boundary) hull.
    std::vector<double> u(static_cast<std::size_t>(dim), 0.0);
    u[0] = 1.0;
    return u;
  }

  // Cheap probes: axis directions. Any probe with nonpositive support is
  // already a certificate.
  for (int axis = 0; axis < dim; ++axis) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> u(static_cast<std::size_t>(dim), 0.0);
      u[static_cast<std::size_t>(axis)] = sign;
      if (support(u).first <= tol) return u;
    }
  }

  // Active subset: per-axis extremes.
  std::set<std::size_t> subset_set;
  for (int axis = 0; axis < dim; ++axis) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> u(static_cast<std::size_t>(dim), 0.0);
      u[static_cast<std::size_t>(axis)] = sign;
      subset_set.insert(support(u).second);
    }
  }
  std::vector<std::size_t> subset(subset_set.begin(), subset_set.end());

  // Grow the subset until its LP verdict transfers to the full set: an
  // interior verdict on a subset is already valid for the superset, and a
  // candidate separator is checked against all points before acceptance.
  for (std::size_t round = 0; round <= n; ++round) {
    FaceLp best;
    for (int axis = 0; axis < dim; ++axis) {
      for (double sign : {1.0, -1.0}) {
        FaceLp face = solve_face(q, dim, subset, axis, sign);
        if (face.margin > best.margin) best = std::move(face);
      }
    }
    if (best.u.empty() || best.margin < -tol) {
      return std::nullopt;  // origin interior to conv(subset), hence to conv(P)
    }
    const auto [viol, arg] = support(best.u);
    if (viol <= tol) return normalized(best.u);
    if (!subset_set.insert(arg).second) {
      throw std::logic_error("separating_direction: stalled without progress");
    }
    subset.push_back(arg);
  }
  throw std::logic_error("separating_direction: iteration cap exceeded");
}

}  // namespace fbmhull
