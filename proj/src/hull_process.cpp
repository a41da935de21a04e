#include "fbmhull/hull_process.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmhull/separation.hpp"

namespace fbmhull {

namespace {

inline Vec2 point2(const VectorPath& path, std::size_t k) {
  return {path.coord(k, 0), path.coord(k, 1)};
}
inline Vec3 point3(const VectorPath& path, std::size_t k) {
  return {path.coord(k, 0), path.coord(k, 1), path.coord(k, 2)};
}

template <typename Hull>
bool origin_strictly_interior(const Hull& hull) {
  if (!hull.full_dim()) return false;
  const double clearance = origin_inradius(hull);
  if (clearance <= 0.0) return false;
  const HullFunctionals f = hull_functionals(hull);
  return clearance > kInteriorMargin * f.diameter;
}

}  // namespace

HullTrajectory::HullTrajectory(int dim, std::size_t points) : dim_(dim), grew_(points, false) {
  if (dim == 2) {
    final_ = Hull2{};
  } else {
    final_ = Hull3{};
  }
}

HullTrajectory evolve_hull(const VectorPath& path) {
  const int d = path.dim();
  if (d != 2 && d != 3) {
    throw std::invalid_argument("evolve_hull: functional tracking needs d in {2,3}");
  }
  HullTrajectory traj(d, path.points());
  if (d == 2) {
    Hull2& hull = std::get<Hull2>(traj.final_);
    for (std::size_t k = 0; k < path.points(); ++k) {
      const bool grew = hull.insert(point2(path, k));
      traj.grew_[k] = grew;
      if (grew) {
        traj.events_.push_back({k, hull.vertices().size(), hull_functionals(hull)});
      }
    }
  } else {
    Hull3& hull = std::get<Hull3>(traj.final_);
    for (std::size_t k = 0; k < path.points(); ++k) {
      const bool grew = hull.insert(point3(path, k));
      traj.grew_[k] = grew;
      if (grew) {
        traj.events_.push_back({k, hull.vertices().size(), hull_functionals(hull)});
      }
    }
  }
  return traj;
}

std::vector<std::size_t> growth_times(const HullTrajectory& traj) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < traj.grew().size(); ++k) {
    if (traj.grew()[k]) out.push_back(k);
  }
  return out;
}

CoverRecord quadrant_cover(const VectorPath& path) {
  const int d = path.dim();
  if (d < 2 || d > kMaxCoverDim) {
    throw std::invalid_argument("quadrant_cover: dimension outside supported range");
  }
  const std::size_t n = path.grid().steps;
  const std::size_t quadrants = std::size_t{1} << d;

  CoverRecord rec;
  rec.first_hit.assign(quadrants, std::nullopt);
  std::size_t hit_count = 0;

  // X(0) = 0 lies in no open quadrant; first hits live in (0, T], so the
  // scan starts at k = 1.
  for (std::size_t k = 1; k <= n; ++k) {
    const auto q = quadrant_of(path.point(k));
    if (q && !rec.first_hit[q->bits]) {
      rec.first_hit[q->bits] = k;
      if (++hit_count == quadrants && !rec.cover_index) rec.cover_index = k;
    }
  }

  if (d <= 3) {
    // Exact incremental-hull route: interiority flips exactly once, at a
    // growth event.
    if (d == 2) {
      Hull2 hull;
      for (std::size_t k = 0; k <= n; ++k) {
        if (hull.insert(point2(path, k)) && origin_strictly_interior(hull)) {
          rec.origin_interior_index = k;
          break;
        }
      }
    } else {
      Hull3 hull;
      for (std::size_t k = 0; k <= n; ++k) {
        if (hull.insert(point3(path, k)) && origin_strictly_interior(hull)) {
          rec.origin_interior_index = k;
          break;
        }
      }
    }
  } else {
    // Origin interiority is monotone in the prefix length; bisect with the
    // separation LP.
    const std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
    auto interior_at = [&](std::size_t k) {
      const std::span<const double> prefix(path.flat().data(),
                                           (k + 1) * static_cast<std::size_t>(d));
      return point_strictly_interior(prefix, d, origin);
    };
    if (interior_at(n)) {
      std::size_t lo = 1, hi = n;  // interior_at(hi) true
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (interior_at(mid)) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      rec.origin_interior_index = lo;
    }
  }
  return rec;
}

EndpointInteriorRoutes endpoint_interior_routes(const VectorPath& path) {
  const std::size_t n = path.grid().steps;
  EndpointInteriorRoutes routes;
  routes.direct = point_strictly_interior(path.flat(), path.dim(), path.point(n));
  // The reversal identity: conv{X(1) - X(1-t)} = X(1) - conv{X(s)}, so the
  // endpoint is interior iff the reversed path's hull surrounds the origin.
  const VectorPath rev = reverse_path(path);
  if (path.dim() <= 3) {
    routes.reversed = quadrant_cover(rev).origin_interior_index.has_value();
  } else {
    const std::vector<double> origin(static_cast<std::size_t>(path.dim()), 0.0);
    routes.reversed = point_strictly_interior(rev.flat(), rev.dim(), origin);
  }
  return routes;
}

bool endpoint_interior(const VectorPath& path) {
  const EndpointInteriorRoutes routes = endpoint_interior_routes(path);
  if (routes.direct != routes.reversed) {
    throw std::logic_error("endpoint_interior: direct and reversed routes disagree");
  }
  return routes.direct;
}

}  // namespace fbmhull
