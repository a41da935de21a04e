#include "fbmhull/convex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmhull {

HullFunctionals hull_functionals(const Hull2& hull) {
  if (!hull.full_dim()) return {.degenerate = true};
  const auto& v = hull.vertices();
  HullFunctionals f;
  f.volume = polygon_area(v);
  f.surface = polygon_perimeter(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      f.diameter = std::max(f.diameter, std::hypot(v[i].x - v[j].x, v[i].y - v[j].y));
    }
  }
  return f;
}

HullFunctionals hull_functionals(const Hull3& hull) {
  if (!hull.full_dim()) return {.degenerate = true};
  const TriMesh m = hull.mesh();
  HullFunctionals f;
  // Interior point: vertex centroid; the hull is the disjoint union of the
  // tetrahedra it spans with each face.
  Vec3 c;
  for (const Vec3& v : m.vertices) {
    c.x += v.x;
    c.y += v.y;
    c.z += v.z;
  }
  const double inv = 1.0 / static_cast<double>(m.vertices.size());
  c = {c.x * inv, c.y * inv, c.z * inv};
  for (const auto& face : m.faces) {
    const Vec3& a = m.vertices[static_cast<std::size_t>(face[0])];
    const Vec3& b = m.vertices[static_cast<std::size_t>(face[1])];
    const Vec3& d = m.vertices[static_cast<std::size_t>(face[2])];
    const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
    const double vx = d.x - a.x, vy = d.y - a.y, vz = d.z - a.z;
    const double nx = uy * vz - uz * vy;
    const double ny = uz * vx - ux * vz;
    const double nz = ux * vy - uy * vx;
    f.surface += 0.5 * std::sqrt(nx * nx + ny * ny + nz * nz);
    const double wx = a.x - c.x, wy = a.y - c.y, wz = a.z - c.z;
    f.volume += std::abs(nx * wx + ny * wy + nz * wz) / 6.0;
  }
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < m.vertices.size(); ++j) {
      const Vec3& a = m.vertices[i];
      const Vec3& b = m.vertices[j];
      const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
      f.diameter = std::max(f.diameter, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
  }
  return f;
}

double support_function(const Hull2& hull, const Vec2& u) {
  const auto& v = hull.vertices();
  if (v.empty()) throw std::invalid_argument("support_function: empty hull");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : v) best = std::max(best, p.x * u.x + p.y * u.y);
  return best;
}

double support_function(const Hull3& hull, const Vec3& u) {
  const auto v = hull.vertices();
  if (v.empty()) throw std::invalid_argument("support_function: empty hull");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec3& p : v) best = std::max(best, p.x * u.x + p.y * u.y + p.z * u.z);
  return best;
}

DirectionSet::DirectionSet(int dim, std::vector<double> flat) : dim_(dim), flat_(std::move(flat)) {
  if (dim < 2) throw std::invalid_argument("DirectionSet: dimension must be >= 2");
  if (flat_.empty() || flat_.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("DirectionSet: flat size must be a multiple of dim");
  }
  const int m = count();
  for (int i = 0; i < m; ++i) {
    double norm = 0.0;
    for (int j = 0; j < dim_; ++j) {
      const double x = flat_[static_cast<std::size_t>(i) * dim_ + j];
      norm += x * x;
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-12) {
      throw std::invalid_argument("DirectionSet: directions must be unit vectors");
    }
  }
  // Rank check by Gaussian elimination on a copy.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < m && static_cast<int>(rows.size()) < dim_; ++i) {
    std::vector<double> r(flat_.begin() + static_cast<std::ptrdiff_t>(i) * dim_,
                          flat_.begin() + static_cast<std::ptrdiff_t>(i + 1) * dim_);
    for (const auto& base : rows) {
      double dot = 0.0, nn = 0.0;
      for (int j = 0; j < dim_; ++j) {
        dot += r[static_cast<std::size_t>(j)] * base[static_cast<std::size_t>(j)];
        nn += base[static_cast<std::size_t>(j)] * base[static_cast<std::size_t>(j)];
      }
      for (int j = 0; j < dim_; ++j) r[static_cast<std::size_t>(j)] -= dot / nn * base[static_cast<std::size_t>(j)];
    }
    double norm = 0.0;
    for (int j = 0; j < dim_; ++j) norm += r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(j)];
    if (norm > 1e-18) rows.push_back(std::move(r));
  }
  if (static_cast<int>(rows.size()) < dim_) {
    throw std::invalid_argument("DirectionSet: directions do not span the space");
  }
}

DirectionSet DirectionSet::circle(int count) {
  if (count < 2) throw std::invalid_argument("DirectionSet::circle: need >= 2 directions");
  std::vector<double> flat(static_cast<std::size_t>(count) * 2);
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
    flat[static_cast<std::size_t>(i) * 2] = std::cos(a);
    flat[static_cast<std::size_t>(i) * 2 + 1] = std::sin(a);
  }
  return DirectionSet(2, std::move(flat));
}

DirectionSet DirectionSet::fibonacci_sphere(int count) {
  if (count < 3) throw std::invalid_argument("DirectionSet::fibonacci_sphere: need >= 3");
  std::vector<double> flat(static_cast<std::size_t>(count) * 3);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    double x = r * std::cos(a);
    double y = r * std::sin(a);
    // Renormalize to absorb roundoff.
    const double n = std::sqrt(x * x + y * y + z * z);
    flat[static_cast<std::size_t>(i) * 3] = x / n;
    flat[static_cast<std::size_t>(i) * 3 + 1] = y / n;
    flat[static_cast<std::size_t>(i) * 3 + 2] = z / n;
  }
  return DirectionSet(3, std::move(flat));
}

double hausdorff_distance(const Hull2& a, const Hull2& b, int directions) {
  const DirectionSet dirs = DirectionSet::circle(directions);
  double best = 0.0;
  for (int i = 0; i < dirs.count(); ++i) {
    const auto u = dirs.direction(i);
    const Vec2 v{u[0], u[1]};
    best = std::max(best, std::abs(support_function(a, v) - support_function(b, v)));
  }
  return best;
}

double hausdorff_distance(const Hull3& a, const Hull3& b, int directions) {
  const DirectionSet dirs = DirectionSet::fibonacci_sphere(directions);
  double best = 0.0;
  for (int i = 0; i < dirs.count(); ++i) {
    const auto u = dirs.direction(i);
    const Vec3 v{u[0], u[1], u[2]};
    best = std::max(best, std::abs(support_function(a, v) - support_function(b, v)));
  }
  return best;
}

std::optional<QuadrantIndex> quadrant_of(std::span<const double> x) {
  QuadrantIndex q;
  q.dim = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) return std::nullopt;
    if (x[i] > 0.0) q.bits |= (1u << i);
  }
  return q;
}

double origin_inradius(const Hull2& hull) { return hull.signed_clearance(Vec2{0.0, 0.0}); }
double origin_inradius(const Hull3& hull) { return hull.signed_clearance(Vec3{0.0, 0.0, 0.0}); }

}  // namespace fbmhull
