#pragma once

#include <span>
#include <vector>

namespace fbmhull {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

// Incremental planar convex hull over exact orientation predicates.
// Degenerate phases (empty, point, segment) are tracked until the point set
// reaches full dimension. The vertex list holds exactly the extreme points;
// full-dimensional hulls are stored counterclockwise starting at the
// lexicographic minimum.
class Hull2 {
 public:
  Hull2() = default;

  // Returns true iff p was strictly outside the hull before insertion.
  bool insert(const Vec2& p);

  int affine_dim() const { return dim_; }
  bool full_dim() const { return dim_ == 2; }
  const std::vector<Vec2>& vertices() const { return v_; }

  bool contains(const Vec2& p) const;          // closed membership, exact
  bool strictly_contains(const Vec2& p) const;  // open membership, exact

  // Positive iff q is strictly interior (then: min distance to the edge
  // lines); otherwise -distance(q, hull), which is monotone under hull
  // growth. Degenerate hulls give 0.
  double signed_clearance(const Vec2& q) const;

 private:
  void canonicalize();

  int dim_ = -1;
  std::vector<Vec2> v_;
};

// Monotone-chain batch hull; the independent counterpart of Hull2::insert.
// Returns CCW vertices starting at the lexicographic minimum.
// Throws DegenerateInput when the points do not span the plane.
std::vector<Vec2> batch_hull2(std::span<const Vec2> points);

double polygon_area(std::span<const Vec2> ccw);
double polygon_perimeter(std::span<const Vec2> ccw);

}  // namespace fbmhull
