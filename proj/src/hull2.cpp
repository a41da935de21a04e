#include "fbmhull/hull2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbmhull/detail/polygon_insert.hpp"
#include "fbmhull/errors.hpp"
#include "fbmhull/predicates.hpp"

namespace fbmhull {

namespace {

inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double pa[2] = {a.x, a.y};
  const double pb[2] = {b.x, b.y};
  const double pc[2] = {c.x, c.y};
  return orient2d_sign(pa, pb, pc);
}

inline bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Is c on the closed segment [a,b]? Caller guarantees collinearity.
inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2& lo = lex_less(a, b) ? a : b;
  const Vec2& hi = lex_less(a, b) ? b : a;
  return !lex_less(c, lo) && !lex_less(hi, c);
}

double point_segment_distance(const Vec2& q, const Vec2& a, const Vec2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double wx = q.x - a.x, wy = q.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

void Hull2::canonicalize() {
  if (dim_ < 2) return;
  std::size_t best = 0;
  for (std::size_t i = 1; i < v_.size(); ++i) {
    if (lex_less(v_[i], v_[best])) best = i;
  }
  std::rotate(v_.begin(), v_.begin() + best, v_.end());
}

bool Hull2::insert(const Vec2& p) {
  if (dim_ == -1) {
    v_ = {p};
    dim_ = 0;
    return true;
  }
  if (dim_ == 0) {
    if (p == v_[0]) return false;
    v_.push_back(p);
    if (lex_less(v_[1], v_[0])) std::swap(v_[0], v_[1]);
    dim_ = 1;
    return true;
  }
  if (dim_ == 1) {
    const int s = orient(v_[0], v_[1], p);
    if (s == 0) {
      if (on_segment(v_[0], v_[1], p)) return false;
      if (lex_less(p, v_[0])) {
        v_[0] = p;
      } else {
        v_[1] = p;
      }
      return true;
    }
    // Full dimension reached; make the triangle counterclockwise.
    if (s > 0) {
      v_.push_back(p);
    } else {
      v_ = {v_[1], v_[0], p};
    }
    dim_ = 2;
    canonicalize();
    return true;
  }

  const bool grew = detail::convex_polygon_insert(
      v_, p, [](const Vec2& a, const Vec2& b, const Vec2& c) { return orient(a, b, c); });
  if (grew) canonicalize();
  return grew;
}

bool Hull2::contains(const Vec2& p) const {
  if (dim_ == -1) return false;
  if (dim_ == 0) return p == v_[0];
  if (dim_ == 1) return orient(v_[0], v_[1], p) == 0 && on_segment(v_[0], v_[1], p);
  const std::size_t h = v_.size();
  for (std::size_t k = 0; k < h; ++k) {
    if (orient(v_[k], v_[(k + 1) % h], p) < 0) return false;
  }
  return true;
}

bool Hull2::strictly_contains(const Vec2& p) const {
  if (dim_ < 2) return false;
  const std::size_t h = v_.size();
  for (std::size_t k = 0; k < h; ++k) {
    if (orient(v_[k], v_[(k + 1) % h], p) <= 0) return false;
  }
  return true;
}

double Hull2::signed_clearance(const Vec2& q) const {
  if (dim_ < 2) return 0.0;
  const std::size_t h = v_.size();
  if (strictly_contains(q)) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < h; ++k) {
      const Vec2& a = v_[k];
      const Vec2& b = v_[(k + 1) % h];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      best = std::min(best, cross / len);
    }
    return best;
  }
  if (contains(q)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < h; ++k) {
    best = std::min(best, point_segment_distance(q, v_[k], v_[(k + 1) % h]));
  }
  return -best;
}

std::vector<Vec2> batch_hull2(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) throw DegenerateInput("batch_hull2: fewer than 3 distinct points");

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateInput("batch_hull2: points are collinear");
  return hull;
}

double polygon_area(std::span<const Vec2> ccw) {
  double acc = 0.0;
  const std::size_t h = ccw.size();
  for (std::size_t k = 0; k < h; ++k) {
    const Vec2& a = ccw[k];
    const Vec2& b = ccw[(k + 1) % h];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

double polygon_perimeter(std::span<const Vec2> ccw) {
  double acc = 0.0;
  const std::size_t h = ccw.size();
  for (std::size_t k = 0; k < h; ++k) {
    const Vec2& a = ccw[k];
    const Vec2& b = ccw[(k + 1) % h];
    acc += std::hypot(b.x - a.x, b.y - a.y);
  }
  return acc;
}

}  // namespace fbmhull
