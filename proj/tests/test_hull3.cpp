#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fbmhull/errors.hpp"
#include "fbmhull/hull3.hpp"
#include "fbmhull/rng.hpp"

using namespace fbmhull;

namespace {

Hull3 hull_of(const std::vector<Vec3>& pts) {
  Hull3 h;
  for (const Vec3& p : pts) h.insert(p);
  return h;
}

std::vector<Vec3> cube_corners() {
  std::vector<Vec3> c;
  for (int i = 0; i < 8; ++i) {
    c.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                 static_cast<double>((i >> 2) & 1)});
  }
  return c;
}

bool same_vertices(std::vector<Vec3> a, std::vector<Vec3> b) {
  auto lex = [](const Vec3& p, const Vec3& q) {
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  return a == b;
}

}  // namespace

TEST_CASE("degenerate phases in 3-space") {
  Hull3 h;
  CHECK(h.insert({0, 0, 0}));
  CHECK(!h.insert({0, 0, 0}));
  CHECK(h.affine_dim() == 0);
  CHECK(h.insert({1, 1, 1}));
  CHECK(h.affine_dim() == 1);
  CHECK(!h.insert({0.5, 0.5, 0.5}));
  CHECK(h.insert({2, 2, 2}));
  CHECK(h.affine_dim() == 1);
  CHECK(h.insert({1, 0, 1}));  // off the line, coplanar phase
  CHECK(h.affine_dim() == 2);
  CHECK(!h.insert({1.0, 0.5, 1.0}));  // inside the planar triangle
  CHECK(h.insert({2, 0, 2}));         // outside, same plane
  CHECK(h.affine_dim() == 2);
  CHECK(h.insert({0, 0, 5}));  // off the plane
  CHECK(h.affine_dim() == 3);
  CHECK_NOTHROW(h.validate());
}

TEST_CASE("cube in timeline order, with interior and boundary rejections") {
  Hull3 h = hull_of(cube_corners());
  CHECK(h.full_dim());
  CHECK_NOTHROW(h.validate());
  CHECK(h.vertices().size() == 8);
  CHECK(!h.insert({0.5, 0.5, 0.5}));  // center
  CHECK(!h.insert({0.5, 0.5, 0.0}));  // face interior
  CHECK(!h.insert({0.5, 0.0, 0.0}));  // edge interior
  CHECK(!h.insert({1.0, 1.0, 1.0}));  // vertex
  CHECK(h.vertices().size() == 8);
  CHECK(h.strictly_contains({0.5, 0.5, 0.5}));
  CHECK(!h.strictly_contains({0.5, 0.5, 0.0}));
  CHECK(h.contains({0.5, 0.5, 0.0}));
  CHECK(!h.contains({1.5, 0.5, 0.5}));
}

TEST_CASE("coplanar spike absorbs a vertex that stops being extreme") {
  // Cube plus (2,0,0): the corner (1,0,0) is the midpoint of (0,0,0)-(2,0,0)
  // and must leave the vertex set.
  Hull3 h = hull_of(cube_corners());
  CHECK(h.insert({2, 0, 0}));
  CHECK_NOTHROW(h.validate());
  const auto v = h.vertices();
  CHECK(v.size() == 8);
  CHECK(std::none_of(v.begin(), v.end(), [](const Vec3& p) { return p == Vec3{1, 0, 0}; }));
  CHECK(std::any_of(v.begin(), v.end(), [](const Vec3& p) { return p == Vec3{2, 0, 0}; }));
}

TEST_CASE("incremental equals brute force on random small instances") {
  GaussianRng rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<Vec3> pts;
    const int n = 5 + static_cast<int>(rng.uniform01() * 25);
    for (int i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.35) {
        pts.push_back({std::floor(rng.uniform01() * 3), std::floor(rng.uniform01() * 3),
                       std::floor(rng.uniform01() * 3)});
      } else {
        pts.push_back({rng.normal(), rng.normal(), rng.normal()});
      }
    }
    Hull3 inc = hull_of(pts);
    TriMesh brute;
    bool degenerate = false;
    try {
      brute = brute_force_hull3(pts);
    } catch (const DegenerateInput&) {
      degenerate = true;
    }
    if (degenerate) {
      CHECK(inc.affine_dim() < 3);
      continue;
    }
    REQUIRE(inc.affine_dim() == 3);
    CHECK_NOTHROW(inc.validate());
    CHECK(same_vertices(inc.vertices(), brute.vertices));
  }
}

TEST_CASE("incremental equals batch on random instances") {
  GaussianRng rng(555);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Vec3> pts;
    const int n = 4 + static_cast<int>(rng.uniform01() * 196);
    for (int i = 0; i < n; ++i) pts.push_back({rng.normal(), rng.normal(), rng.normal()});
    Hull3 inc = hull_of(pts);
    REQUIRE(inc.full_dim());
    const TriMesh batch = batch_hull3(pts);
    CHECK(same_vertices(inc.vertices(), batch.vertices));
    CHECK_NOTHROW(inc.validate());
  }
}

TEST_CASE("batch hull rejects lower-dimensional input") {
  CHECK_THROWS_AS(batch_hull3(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}),
                  DegenerateInput);
  CHECK_THROWS_AS(brute_force_hull3(std::vector<Vec3>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}),
                  DegenerateInput);
}

TEST_CASE("signed clearance: tetrahedron fixtures") {
  // Regular octahedron vertices: facet planes at distance 1/sqrt(3).
  Hull3 h = hull_of({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  CHECK(h.signed_clearance({0, 0, 0}) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  // Shifted: origin outside by a unit along x.
  Hull3 far = hull_of({{2, 0, 0}, {3, 0, 0}, {2, 1, 0}, {2, 0, 1}});
  CHECK(far.signed_clearance({0, 0, 0}) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(far.signed_clearance({2.1, 0.2, 0.2}) > 0.0);
}

TEST_CASE("clearance monotone under insertion in 3d") {
  GaussianRng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    Hull3 h;
    double prev = -1e300;
    const double ox = rng.normal();
    for (int i = 0; i < 40; ++i) {
      h.insert({rng.normal() + ox, rng.normal(), rng.normal()});
      if (!h.full_dim()) continue;
      const double c = h.signed_clearance({0, 0, 0});
      if (prev != -1e300) CHECK(c >= prev - 1e-12 * (std::abs(prev) + 1.0));
      prev = c;
    }
  }
}
