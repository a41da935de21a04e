#include "fbmhull/hull3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "fbmhull/detail/polygon_insert.hpp"
#include "fbmhull/errors.hpp"
#include "fbmhull/predicates.hpp"

namespace fbmhull {

namespace {

inline const double* ptr(const Vec3& v) { return &v.x; }

inline int orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return orient3d_sign(ptr(a), ptr(b), ptr(c), ptr(d));
}

inline bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

inline bool on_segment3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3& lo = lex_less(a, b) ? a : b;
  const Vec3& hi = lex_less(a, b) ? b : a;
  return !lex_less(c, lo) && !lex_less(hi, c);
}

// Exact in-plane orientation through an axis-aligned projection. flip
// compensates for projections that reverse the plane's orientation.
inline int planar_orient(const Vec3& a, const Vec3& b, const Vec3& c, int axis, bool flip) {
  const int u = (axis + 1) % 3;
  const int v = (axis + 2) % 3;
  const double pa[2] = {ptr(a)[u], ptr(a)[v]};
  const double pb[2] = {ptr(b)[u], ptr(b)[v]};
  const double pc[2] = {ptr(c)[u], ptr(c)[v]};
  const int s = orient2d_sign(pa, pb, pc);
  return flip ? -s : s;
}

double point_triangle_distance(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Ericson-style closest point on triangle.
  const double abx = b.x - a.x, aby = b.y - a.y, abz = b.z - a.z;
  const double acx = c.x - a.x, acy = c.y - a.y, acz = c.z - a.z;
  const double aqx = q.x - a.x, aqy = q.y - a.y, aqz = q.z - a.z;

  const double d1 = abx * aqx + aby * aqy + abz * aqz;
  const double d2 = acx * aqx + acy * aqy + acz * aqz;
  auto dist_to = [&](double px, double py, double pz) {
    const double dx = q.x - px, dy = q.y - py, dz = q.z - pz;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  };
  if (d1 <= 0.0 && d2 <= 0.0) return dist_to(a.x, a.y, a.z);

  const double bqx = q.x - b.x, bqy = q.y - b.y, bqz = q.z - b.z;
  const double d3 = abx * bqx + aby * bqy + abz * bqz;
  const double d4 = acx * bqx + acy * bqy + acz * bqz;
  if (d3 >= 0.0 && d4 <= d3) return dist_to(b.x, b.y, b.z);

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double t = d1 / (d1 - d3);
    return dist_to(a.x + t * abx, a.y + t * aby, a.z + t * abz);
  }

  const double cqx = q.x - c.x, cqy = q.y - c.y, cqz = q.z - c.z;
  const double d5 = abx * cqx + aby * cqy + abz * cqz;
  const double d6 = acx * cqx + acy * cqy + acz * cqz;
  if (d6 >= 0.0 && d5 <= d6) return dist_to(c.x, c.y, c.z);

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double t = d2 / (d2 - d6);
    return dist_to(a.x + t * acx, a.y + t * acy, a.z + t * acz);
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return dist_to(b.x + t * (c.x - b.x), b.y + t * (c.y - b.y), b.z + t * (c.z - b.z));
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return dist_to(a.x + abx * v + acx * w, a.y + aby * v + acy * w, a.z + abz * v + acz * w);
}

double face_plane_distance(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Signed distance with the (b-a) x (c-a) normal; positive on the side the
  // normal points away from.
  const double nx = (b.y - a.y) * (c.z - a.z) - (b.z - a.z) * (c.y - a.y);
  const double ny = (b.z - a.z) * (c.x - a.x) - (b.x - a.x) * (c.z - a.z);
  const double nz = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  return ((q.x - a.x) * nx + (q.y - a.y) * ny + (q.z - a.z) * nz) / norm;
}

std::vector<Vec3> dedupe_sorted(std::span<const Vec3> points) {
  std::vector<Vec3> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// brute-force exact hull
// ---------------------------------------------------------------------------

TriMesh brute_force_hull3(std::span<const Vec3> points) {
  const std::vector<Vec3> pts = dedupe_sorted(points);
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateInput("brute_force_hull3: fewer than 4 distinct points");

  // Supporting planes, keyed by the exact set of incident points. A plane
  // found through several triples (or with flipped orientation) dedupes to
  // one entry.
  std::set<std::vector<int>> planes;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (collinear3d(ptr(pts[i]), ptr(pts[j]), ptr(pts[k]))) continue;
        int pos = 0, neg = 0;
        std::vector<int> on;
        for (int t = 0; t < n; ++t) {
          const int s = orient3(pts[i], pts[j], pts[k], pts[t]);
          if (s > 0) {
            ++pos;
          } else if (s < 0) {
            ++neg;
          } else {
            on.push_back(t);
          }
          if (pos > 0 && neg > 0) break;
        }
        if (pos > 0 && neg > 0) continue;
        planes.insert(on);
      }
    }
  }
  if (planes.empty()) {
    throw DegenerateInput("brute_force_hull3: points do not span 3-space");
  }
  for (const auto& on : planes) {
    if (static_cast<int>(on.size()) == n) {
      throw DegenerateInput("brute_force_hull3: points are coplanar");
    }
  }

  struct Poly {
    std::vector<int> ring;  // CCW seen from outside
  };
  std::vector<Poly> polys;
  std::set<int> vertex_ids;

  auto process_plane = [&](const std::vector<int>& on) {
    // 2-D hull of the incident points inside their common plane.
    const Vec3& A = pts[on[0]];
    const Vec3& B = pts[on[1]];
    // Find a third non-collinear incident point to fix the plane frame.
    int ci = -1;
    for (std::size_t t = 2; t < on.size(); ++t) {
      if (!collinear3d(ptr(A), ptr(B), ptr(pts[on[t]]))) {
        ci = on[t];
        break;
      }
    }
    if (ci < 0) return;  // degenerate sliver; cannot happen for true facets
    const Vec3& C = pts[ci];
    int axis = -1;
    for (int i = 0; i < 3; ++i) {
      if (cross3_component_sign(ptr(A), ptr(B), ptr(C), i) != 0) {
        axis = i;
        break;
      }
    }
    const bool flip = cross3_component_sign(ptr(A), ptr(B), ptr(C), axis) < 0;

    // Monotone chain over projected coordinates, exact orientation.
    std::vector<int> ids(on.begin(), on.end());
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    std::sort(ids.begin(), ids.end(), [&](int lhs, int rhs) {
      const double lu = ptr(pts[lhs])[u], lv = ptr(pts[lhs])[v];
      const double ru = ptr(pts[rhs])[u], rv = ptr(pts[rhs])[v];
      return lu < ru || (lu == ru && lv < rv);
    });
    auto turn = [&](int a, int b, int c) {
      return planar_orient(pts[a], pts[b], pts[c], axis, flip);
    };
    const std::size_t m = ids.size();
    std::vector<int> ring(2 * m);
    std::size_t kk = 0;
    for (std::size_t t = 0; t < m; ++t) {
      while (kk >= 2 && turn(ring[kk - 2], ring[kk - 1], ids[t]) <= 0) --kk;
      ring[kk++] = ids[t];
    }
    const std::size_t lower = kk + 1;
    for (std::size_t t = m - 1; t-- > 0;) {
      while (kk >= lower && turn(ring[kk - 2], ring[kk - 1], ids[t]) <= 0) --kk;
      ring[kk++] = ids[t];
    }
    ring.resize(kk - 1);

    // ring is CCW in the projection frame; flip it if a point off the plane
    // reports the wrong side, leaving the ring CCW seen from outside.
    int inside = -1;
    for (int t = 0; t < n; ++t) {
      if (orient3(pts[on[0]], pts[on[1]], pts[ci], pts[t]) != 0) {
        inside = t;
        break;
      }
    }
    const int s = orient3(pts[ring[0]], pts[ring[1]], pts[ring[2]], pts[inside]);
    std::vector<int> final_ring = ring;
    if (s < 0) std::reverse(final_ring.begin(), final_ring.end());

    for (int id : final_ring) vertex_ids.insert(id);
    polys.push_back({std::move(final_ring)});
  };

  for (const auto& on : planes) process_plane(on);

  // Remap to a lex-sorted vertex list and fan-triangulate each facet ring.
  TriMesh mesh;
  std::map<int, int> remap;
  for (int id : vertex_ids) {
    remap[id] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(pts[id]);
  }
  for (const Poly& poly : polys) {
    for (std::size_t t = 1; t + 1 < poly.ring.size(); ++t) {
      mesh.faces.push_back(
          {remap[poly.ring[0]], remap[poly.ring[t]], remap[poly.ring[t + 1]]});
    }
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Hull3
// ---------------------------------------------------------------------------

std::vector<Vec3> Hull3::vertices() const {
  if (dim_ < 3) return flat_;
  std::set<int> used;
  for (const Face& f : faces_) {
    used.insert(f.a);
    used.insert(f.b);
    used.insert(f.c);
  }
  std::vector<Vec3> out;
  out.reserve(used.size());
  for (int id : used) out.push_back(pts_[static_cast<std::size_t>(id)]);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

TriMesh Hull3::mesh() const {
  if (dim_ < 3) throw DegenerateInput("Hull3::mesh: hull not full-dimensional");
  TriMesh m;
  std::map<int, int> remap;
  std::set<int> used;
  for (const Face& f : faces_) {
    used.insert(f.a);
    used.insert(f.b);
    used.insert(f.c);
  }
  for (int id : used) {
    remap[id] = static_cast<int>(m.vertices.size());
    m.vertices.push_back(pts_[static_cast<std::size_t>(id)]);
  }
  for (const Face& f : faces_) m.faces.push_back({remap[f.a], remap[f.b], remap[f.c]});
  return m;
}

Vec3 Hull3::interior_reference() const {
  const std::vector<Vec3> vs = vertices();
  Vec3 c;
  for (const Vec3& v : vs) {
    c.x += v.x;
    c.y += v.y;
    c.z += v.z;
  }
  const double inv = 1.0 / static_cast<double>(vs.size());
  return {c.x * inv, c.y * inv, c.z * inv};
}

int Hull3::face_sign(const Face& f, const Vec3& p) const {
  return orient3(pts_[static_cast<std::size_t>(f.a)], pts_[static_cast<std::size_t>(f.b)],
                 pts_[static_cast<std::size_t>(f.c)], p);
}

void Hull3::rebuild_with(const Vec3& p) {
  std::vector<Vec3> vs = vertices();
  vs.push_back(p);
  const TriMesh m = brute_force_hull3(vs);
  pts_ = m.vertices;
  faces_.clear();
  faces_.reserve(m.faces.size());
  // brute_force_hull3 orients rings CCW from outside; store faces so the
  // interior reference sees positive orientation.
  Vec3 c;
  for (const Vec3& v : pts_) {
    c.x += v.x;
    c.y += v.y;
    c.z += v.z;
  }
  const double inv = 1.0 / static_cast<double>(pts_.size());
  c = {c.x * inv, c.y * inv, c.z * inv};
  for (const auto& f : m.faces) {
    Face face{f[0], f[1], f[2]};
    if (face_sign(face, c) < 0) std::swap(face.b, face.c);
    faces_.push_back(face);
  }
  dim_ = 3;
  flat_.clear();
}

void Hull3::promote_to_full_dim(const Vec3& p) {
  // flat_ holds a CCW planar polygon; p is strictly off its plane.
  std::vector<Vec3> base = flat_;
  pts_.clear();
  faces_.clear();
  pts_ = {base[0], base[1], base[2], p};
  const Vec3 ref{(base[0].x + base[1].x + base[2].x + p.x) / 4.0,
                 (base[0].y + base[1].y + base[2].y + p.y) / 4.0,
                 (base[0].z + base[1].z + base[2].z + p.z) / 4.0};
  const int tris[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& t : tris) {
    Face f{t[0], t[1], t[2]};
    const int s = orient3(pts_[static_cast<std::size_t>(f.a)], pts_[static_cast<std::size_t>(f.b)],
                          pts_[static_cast<std::size_t>(f.c)], ref);
    if (s == 0) throw std::logic_error("Hull3: degenerate initial tetrahedron");
    if (s < 0) std::swap(f.b, f.c);
    faces_.push_back(f);
  }
  dim_ = 3;
  flat_.clear();
  for (std::size_t i = 3; i < base.size(); ++i) insert_full_dim(base[i]);
}

bool Hull3::insert(const Vec3& p) {
  if (dim_ == -1) {
    flat_ = {p};
    dim_ = 0;
    return true;
  }
  if (dim_ == 0) {
    if (p == flat_[0]) return false;
    flat_.push_back(p);
    if (lex_less(flat_[1], flat_[0])) std::swap(flat_[0], flat_[1]);
    dim_ = 1;
    return true;
  }
  if (dim_ == 1) {
    if (collinear3d(ptr(flat_[0]), ptr(flat_[1]), ptr(p))) {
      if (on_segment3(flat_[0], flat_[1], p)) return false;
      if (lex_less(p, flat_[0])) {
        flat_[0] = p;
      } else {
        flat_[1] = p;
      }
      return true;
    }
    // Plane reached: fix the projection frame from the first triangle.
    proj_axis_ = -1;
    for (int i = 0; i < 3; ++i) {
      if (cross3_component_sign(ptr(flat_[0]), ptr(flat_[1]), ptr(p), i) != 0) {
        proj_axis_ = i;
        break;
      }
    }
    proj_flip_ = cross3_component_sign(ptr(flat_[0]), ptr(flat_[1]), ptr(p), proj_axis_) < 0;
    flat_.push_back(p);
    if (planar_orient(flat_[0], flat_[1], flat_[2], proj_axis_, proj_flip_) < 0) {
      std::swap(flat_[1], flat_[2]);
    }
    dim_ = 2;
    return true;
  }
  if (dim_ == 2) {
    const int side = orient3(flat_[0], flat_[1], flat_[2], p);
    if (side != 0) {
      promote_to_full_dim(p);
      return true;
    }
    return detail::convex_polygon_insert(
        flat_, p, [this](const Vec3& a, const Vec3& b, const Vec3& c) {
          return planar_orient(a, b, c, proj_axis_, proj_flip_);
        });
  }
  return insert_full_dim(p);
}

bool Hull3::insert_full_dim(const Vec3& p) {
  const std::size_t nf = faces_.size();
  std::vector<int> sign(nf);
  bool any_visible = false;
  bool any_coplanar = false;
  for (std::size_t i = 0; i < nf; ++i) {
    sign[i] = face_sign(faces_[i], p);
    if (sign[i] < 0) any_visible = true;
    if (sign[i] == 0) any_coplanar = true;
  }
  if (!any_visible) return false;  // inside or on the boundary
  if (any_coplanar) {
    // p extends a supporting plane; extreme-point bookkeeping requires the
    // exact rebuild.
    rebuild_with(p);
    return true;
  }

  // Horizon: directed edges of visible faces whose neighbour is not visible.
  std::map<std::pair<int, int>, std::pair<int, bool>> edge_info;  // undirected -> (face, dir)
  auto record = [&](int u, int v, std::size_t fi) {
    const bool swapped = u > v;
    const auto key = swapped ? std::make_pair(v, u) : std::make_pair(u, v);
    auto it = edge_info.find(key);
    if (it == edge_info.end()) {
      edge_info.emplace(key, std::make_pair(static_cast<int>(fi), swapped));
    } else {
      it->second.first = -1;  // shared by two visible faces: interior edge
    }
  };
  for (std::size_t i = 0; i < nf; ++i) {
    if (sign[i] >= 0) continue;
    const Face& f = faces_[i];
    record(f.a, f.b, i);
    record(f.b, f.c, i);
    record(f.c, f.a, i);
  }
  std::vector<std::pair<int, int>> horizon;  // directed as in the visible face
  for (const auto& [key, info] : edge_info) {
    if (info.first < 0) continue;
    horizon.emplace_back(info.second ? key.second : key.first,
                         info.second ? key.first : key.second);
  }
  // A horizon edge collinear with p would create a zero-area face.
  for (const auto& [u, v] : horizon) {
    if (collinear3d(ptr(pts_[static_cast<std::size_t>(u)]),
                    ptr(pts_[static_cast<std::size_t>(v)]), ptr(p))) {
      rebuild_with(p);
      return true;
    }
  }

  const Vec3 ref = interior_reference();
  std::vector<Face> next;
  next.reserve(nf - static_cast<std::size_t>(std::count(sign.begin(), sign.end(), -1)) +
               horizon.size());
  for (std::size_t i = 0; i < nf; ++i) {
    if (sign[i] >= 0) next.push_back(faces_[i]);
  }
  pts_.push_back(p);
  const int pid = static_cast<int>(pts_.size()) - 1;
  for (const auto& [u, v] : horizon) {
    Face f{u, v, pid};
    const int s = face_sign(f, ref);
    if (s == 0) {
      pts_.pop_back();
      rebuild_with(p);
      return true;
    }
    if (s < 0) std::swap(f.b, f.c);
    next.push_back(f);
  }
  faces_ = std::move(next);
  return true;
}

bool Hull3::contains(const Vec3& p) const {
  if (dim_ == -1) return false;
  if (dim_ == 0) return p == flat_[0];
  if (dim_ == 1) {
    return collinear3d(ptr(flat_[0]), ptr(flat_[1]), ptr(p)) && on_segment3(flat_[0], flat_[1], p);
  }
  if (dim_ == 2) {
    if (orient3(flat_[0], flat_[1], flat_[2], p) != 0) return false;
    const std::size_t h = flat_.size();
    for (std::size_t k = 0; k < h; ++k) {
      if (planar_orient(flat_[k], flat_[(k + 1) % h], p, proj_axis_, proj_flip_) < 0) return false;
    }
    return true;
  }
  for (const Face& f : faces_) {
    if (face_sign(f, p) < 0) return false;
  }
  return true;
}

bool Hull3::strictly_contains(const Vec3& p) const {
  if (dim_ < 3) return false;
  for (const Face& f : faces_) {
    if (face_sign(f, p) <= 0) return false;
  }
  return true;
}

double Hull3::signed_clearance(const Vec3& q) const {
  if (dim_ < 3) return 0.0;
  if (strictly_contains(q)) {
    double best = std::numeric_limits<double>::infinity();
    for (const Face& f : faces_) {
      // Faces are stored interior-positive; distance from q to the plane.
      const double d = face_plane_distance(q, pts_[static_cast<std::size_t>(f.a)],
                                           pts_[static_cast<std::size_t>(f.b)],
                                           pts_[static_cast<std::size_t>(f.c)]);
      best = std::min(best, std::abs(d));
    }
    return best;
  }
  if (contains(q)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Face& f : faces_) {
    best = std::min(best, point_triangle_distance(q, pts_[static_cast<std::size_t>(f.a)],
                                                  pts_[static_cast<std::size_t>(f.b)],
                                                  pts_[static_cast<std::size_t>(f.c)]));
  }
  return -best;
}

void Hull3::validate() const {
  if (dim_ < 3) return;
  std::map<std::pair<int, int>, int> directed;
  std::set<int> used;
  const Vec3 ref = interior_reference();
  for (const Face& f : faces_) {
    if (face_sign(f, ref) <= 0) {
      throw std::logic_error("Hull3::validate: face not positively oriented");
    }
    directed[{f.a, f.b}]++;
    directed[{f.b, f.c}]++;
    directed[{f.c, f.a}]++;
    used.insert(f.a);
    used.insert(f.b);
    used.insert(f.c);
  }
  std::set<std::pair<int, int>> undirected;
  for (const auto& [e, count] : directed) {
    if (count != 1) throw std::logic_error("Hull3::validate: directed edge reused");
    if (directed.count({e.second, e.first}) != 1) {
      throw std::logic_error("Hull3::validate: surface not closed");
    }
    undirected.insert({std::min(e.first, e.second), std::max(e.first, e.second)});
  }
  const long long v = static_cast<long long>(used.size());
  const long long e = static_cast<long long>(undirected.size());
  const long long fcount = static_cast<long long>(faces_.size());
  if (v - e + fcount != 2) {
    throw std::logic_error("Hull3::validate: Euler characteristic violated");
  }
}

TriMesh batch_hull3(std::span<const Vec3> points) {
  const std::vector<Vec3> pts = dedupe_sorted(points);
  Hull3 hull;
  for (const Vec3& p : pts) hull.insert(p);
  if (!hull.full_dim()) throw DegenerateInput("batch_hull3: points do not span 3-space");
  return hull.mesh();
}

}  // namespace fbmhull
