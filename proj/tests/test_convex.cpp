#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbmhull/convex.hpp"
#include "fbmhull/rng.hpp"

using namespace fbmhull;

namespace {

Hull2 hull2_of(const std::vector<Vec2>& pts) {
  Hull2 h;
  for (const Vec2& p : pts) h.insert(p);
  return h;
}

Hull3 hull3_of(const std::vector<Vec3>& pts) {
  Hull3 h;
  for (const Vec3& p : pts) h.insert(p);
  return h;
}

}  // namespace

TEST_CASE("functional fixtures in 2d") {
  const Hull2 square = hull2_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto f = hull_functionals(square);
  CHECK(!f.degenerate);
  CHECK(f.volume == doctest::Approx(1.0));
  CHECK(f.surface == doctest::Approx(4.0));
  CHECK(f.diameter == doctest::Approx(std::sqrt(2.0)));

  const Hull2 tri = hull2_of({{0, 0}, {1, 0}, {0, 1}});
  f = hull_functionals(tri);
  CHECK(f.volume == doctest::Approx(0.5));
  CHECK(f.surface == doctest::Approx(2.0 + std::sqrt(2.0)));
  CHECK(f.diameter == doctest::Approx(std::sqrt(2.0)));

  const Hull2 seg = hull2_of({{0, 0}, {1, 1}});
  f = hull_functionals(seg);
  CHECK(f.degenerate);
  CHECK(f.volume == 0.0);
  CHECK(f.surface == 0.0);
  CHECK(f.diameter == 0.0);
}

TEST_CASE("functional fixtures in 3d") {
  std::vector<Vec3> cube;
  for (int i = 0; i < 8; ++i) {
    cube.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                    static_cast<double>((i >> 2) & 1)});
  }
  const auto f = hull_functionals(hull3_of(cube));
  CHECK(!f.degenerate);
  CHECK(f.volume == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.surface == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(f.diameter == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  const auto tetra = hull3_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto g = hull_functionals(tetra);
  CHECK(g.volume == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(g.surface == doctest::Approx(1.5 + std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("disc hull area against rejection sampling") {
  GaussianRng rng(8);
  std::vector<Vec2> pts;
  for (int i = 0; i < 100; ++i) {
    double x, y;
    do {
      x = rng.uniform01() * 2.0 - 1.0;
      y = rng.uniform01() * 2.0 - 1.0;
    } while (x * x + y * y > 1.0);
    pts.push_back({x, y});
  }
  Hull2 h = hull2_of(pts);
  const double area = hull_functionals(h).volume;

  // Rejection-sampling oracle over the bounding square.
  const std::size_t shots = 400000;
  std::size_t inside = 0;
  for (std::size_t s = 0; s < shots; ++s) {
    const Vec2 q{rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
    if (h.contains(q)) ++inside;
  }
  const double p = static_cast<double>(inside) / static_cast<double>(shots);
  const double est = 4.0 * p;
  const double se = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
  CHECK(std::abs(area - est) < 3.0 * se);
}

TEST_CASE("support function fixtures and exhaustive oracle") {
  const Hull2 square = hull2_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(support_function(square, Vec2{1.0, 0.0}) == doctest::Approx(1.0));
  const Hull2 diamond = hull2_of({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(support_function(diamond, Vec2{M_SQRT1_2, M_SQRT1_2}) ==
        doctest::Approx(M_SQRT1_2).epsilon(1e-14));

  GaussianRng rng(12);
  std::vector<Vec2> pts;
  for (int i = 0; i < 60; ++i) pts.push_back({rng.normal(), rng.normal()});
  const Hull2 h = hull2_of(pts);
  for (int t = 0; t < 200; ++t) {
    const double a = rng.uniform01() * 2.0 * M_PI;
    const Vec2 u{std::cos(a), std::sin(a)};
    double expect = -1e300;
    for (const Vec2& p : pts) expect = std::max(expect, p.x * u.x + p.y * u.y);
    CHECK(support_function(h, u) == expect);  // exact: max over all points
  }
}

TEST_CASE("hausdorff distance fixtures") {
  const Hull2 square = hull2_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(hausdorff_distance(square, square) == 0.0);
  const double delta = 0.37;
  const Hull2 moved = hull2_of({{delta, 0}, {1 + delta, 0}, {1 + delta, 1}, {delta, 1}});
  CHECK(hausdorff_distance(square, moved) == doctest::Approx(delta).epsilon(1e-12));
}

TEST_CASE("hausdorff against boundary-sampling oracle") {
  GaussianRng rng(314);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec2> pa, pb;
    for (int i = 0; i < 30; ++i) pa.push_back({rng.normal(), rng.normal()});
    for (int i = 0; i < 30; ++i) pb.push_back({rng.normal() * 1.3 + 0.2, rng.normal()});
    const Hull2 a = hull2_of(pa);
    const Hull2 b = hull2_of(pb);
    const double got = hausdorff_distance(a, b, 4096);

    // Dense boundary sampling: max over boundary points of one hull of the
    // distance to the other hull, symmetrized.
    auto boundary = [](const Hull2& h, int per_edge) {
      std::vector<Vec2> out;
      const auto& v = h.vertices();
      for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec2& p = v[k];
        const Vec2& q = v[(k + 1) % v.size()];
        for (int t = 0; t < per_edge; ++t) {
          const double w = static_cast<double>(t) / per_edge;
          out.push_back({p.x + w * (q.x - p.x), p.y + w * (q.y - p.y)});
        }
      }
      return out;
    };
    auto one_sided = [&](const Hull2& from, const Hull2& to) {
      double worst = 0.0;
      for (const Vec2& p : boundary(from, 200)) {
        worst = std::max(worst, std::abs(std::min(0.0, to.signed_clearance(p))));
      }
      return worst;
    };
    const double oracle = std::max(one_sided(a, b), one_sided(b, a));
    CHECK(got == doctest::Approx(oracle).epsilon(0.02));
    CHECK(got <= oracle + 1e-12);  // support probing is a lower bound
  }
}

TEST_CASE("hausdorff metric axioms on random triples") {
  GaussianRng rng(1618);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vec2> pa, pb, pc;
    for (int i = 0; i < 20; ++i) {
      pa.push_back({rng.normal(), rng.normal()});
      pb.push_back({rng.normal() + 1.0, rng.normal()});
      pc.push_back({rng.normal(), rng.normal() - 0.5});
    }
    const Hull2 a = hull2_of(pa), b = hull2_of(pb), c = hull2_of(pc);
    const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
    const double bc = hausdorff_distance(b, c), ac = hausdorff_distance(a, c);
    CHECK(ab == ba);  // symmetry, exact
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("positive scaling equivariance of functionals") {
  GaussianRng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({rng.normal(), rng.normal()});
    const double c = 0.1 + 5.0 * rng.uniform01();
    std::vector<Vec2> scaled;
    for (const Vec2& p : pts) scaled.push_back({c * p.x, c * p.y});
    const auto f = hull_functionals(hull2_of(pts));
    const auto g = hull_functionals(hull2_of(scaled));
    CHECK(g.volume == doctest::Approx(c * c * f.volume).epsilon(1e-10));
    CHECK(g.surface == doctest::Approx(c * f.surface).epsilon(1e-10));
    CHECK(g.diameter == doctest::Approx(c * f.diameter).epsilon(1e-10));
  }
}

TEST_CASE("quadrant classification") {
  CHECK(quadrant_of(std::vector<double>{1.2, -0.5})->bits == 0b01u);
  CHECK(!quadrant_of(std::vector<double>{0.0, 3.0}).has_value());
  CHECK(quadrant_of(std::vector<double>{-1, -1, -1})->bits == 0u);
  CHECK(quadrant_of(std::vector<double>{1, 1, 1})->bits == 0b111u);
  CHECK(quadrant_of(std::vector<double>{-0.0, 1.0}).has_value() == false);
}

TEST_CASE("direction sets validate") {
  CHECK_THROWS(DirectionSet(2, {1.0, 0.0, 1.0, 0.0}));  // rank deficient
  CHECK_THROWS(DirectionSet(2, {2.0, 0.0, 0.0, 1.0}));  // not unit
  const auto circle = DirectionSet::circle(8);
  CHECK(circle.count() == 8);
  CHECK(circle.direction(0)[0] == doctest::Approx(1.0));
  const auto sphere = DirectionSet::fibonacci_sphere(64);
  CHECK(sphere.count() == 64);
}
