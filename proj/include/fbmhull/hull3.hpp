#pragma once

#include <array>
#include <span>
#include <vector>

namespace fbmhull {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline bool operator==(const Vec3& a, const Vec3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

struct TriMesh {
  std::vector<Vec3> vertices;               // extreme points, lex sorted
  std::vector<std::array<int, 3>> faces;    // outward-oriented triangles
};

// Incremental 3-D convex hull with exact predicates. Degenerate phases
// (point, segment, planar polygon) are tracked until four affinely
// independent points arrive. Points landing exactly on supporting planes of
// existing facets trigger an exact brute-force rebuild of the (small) vertex
// set, so the vertex list always holds exactly the extreme points.
class Hull3 {
 public:
  Hull3() = default;

  // Returns true iff p was strictly outside the hull before insertion.
  bool insert(const Vec3& p);

  int affine_dim() const { return dim_; }
  bool full_dim() const { return dim_ == 3; }

  // Extreme points. Degenerate phases report the current extreme set
  // (endpoints / planar polygon vertices).
  std::vector<Vec3> vertices() const;

  // Outward-oriented triangles over the current point store (full-dim only).
  TriMesh mesh() const;

  bool contains(const Vec3& p) const;
  bool strictly_contains(const Vec3& p) const;

  // Positive iff q strictly interior (min distance to facet planes),
  // otherwise -distance(q, hull). Degenerate hulls give 0.
  double signed_clearance(const Vec3& q) const;

  // Structural checks: closed 2-manifold, Euler characteristic, orientation.
  // Throws std::logic_error on violation. Test helper.
  void validate() const;

 private:
  struct Face {
    int a, b, c;
  };

  bool insert_full_dim(const Vec3& p);
  void rebuild_with(const Vec3& p);
  void promote_to_full_dim(const Vec3& p);
  Vec3 interior_reference() const;
  int face_sign(const Face& f, const Vec3& p) const;

  int dim_ = -1;
  // Degenerate-phase state (dim <= 2). For dim 2 the polygon is CCW with
  // respect to the projection fixed by proj_axis_/proj_flip_.
  std::vector<Vec3> flat_;
  int proj_axis_ = 2;
  bool proj_flip_ = false;

  // Full-dimensional state: append-only point store plus faces over it.
  std::vector<Vec3> pts_;
  std::vector<Face> faces_;
};

// Batch construction: lex-sorted insertion order, same exact machinery.
// Throws DegenerateInput when the points do not span 3-space.
TriMesh batch_hull3(std::span<const Vec3> points);

// Exact O(n^4) facet enumeration; the oracle for the incremental paths and
// the rebuild engine for degenerate insertions. Intended for small sets.
TriMesh brute_force_hull3(std::span<const Vec3> points);

}  // namespace fbmhull
