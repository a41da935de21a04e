#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbmhull/errors.hpp"
#include "fbmhull/fbm.hpp"
#include "fbmhull/parallel.hpp"

using namespace fbmhull;

TEST_CASE("scalar covariance closed forms") {
  CHECK(scalar_fbm_covariance(1.0, 1.0, HurstIndex(0.3), 1.0) == doctest::Approx(1.0));
  CHECK(scalar_fbm_covariance(1.0, 1.0, HurstIndex(0.8), 2.5) == doctest::Approx(2.5));
  CHECK(scalar_fbm_covariance(2.0, 0.0, HurstIndex(0.7), 1.0) == doctest::Approx(0.0));
  // H = 1/2 reduces to min(t, s).
  CHECK(scalar_fbm_covariance(2.0, 1.0, HurstIndex(0.5), 1.0) == doctest::Approx(1.0));
  CHECK(scalar_fbm_covariance(0.3, 1.7, HurstIndex(0.5), 1.0) == doctest::Approx(0.3));
  // 0.5 * (2^{1.5} + 1 - 1) = sqrt(2).
  CHECK(scalar_fbm_covariance(2.0, 1.0, HurstIndex(0.75), 1.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS(scalar_fbm_covariance(-1.0, 0.0, HurstIndex(0.5), 1.0));
}

TEST_CASE("type validation") {
  CHECK_THROWS(HurstIndex(0.0));
  CHECK_THROWS(HurstIndex(1.0));
  CHECK_THROWS(HurstIndex(-0.2));
  CHECK_NOTHROW(HurstIndex(0.5));
  CHECK_THROWS(SpdMatrix(2, {1.0, 0.5, 0.4, 1.0}));   // asymmetric
  CHECK_THROWS(SpdMatrix(2, {1.0, 2.0, 2.0, 1.0}));   // indefinite
  CHECK_NOTHROW(SpdMatrix(2, {4.0, 0.0, 0.0, 1.0}));
  const SpdMatrix q(2, {1.0, 0.5, 0.5, 1.0});
  const std::vector<double> e{1.0, 0.0};
  CHECK(q.quad_form(e) == doctest::Approx(1.0));
  const std::vector<double> f{1.0, 1.0};
  CHECK(q.quad_form(f) == doctest::Approx(3.0));
}

TEST_CASE("paths start at the origin and are reproducible across workers") {
  const TimeGrid grid{1.0, 128};
  const PathSampler sampler(HurstIndex(0.7), SpdMatrix::identity(2), grid);
  const RandomSeed seed{42};

  std::vector<VectorPath> serial, parallel;
  for (int i = 0; i < 8; ++i) serial.push_back(sampler.sample(seed, static_cast<std::uint64_t>(i)));
  parallel.assign(8, VectorPath(grid, 2));
  for_each_index(8, 4, [&](std::size_t i) {
    PathSampler::Workspace ws;
    parallel[i] = sampler.sample(seed, i, ws);
  });
  for (int i = 0; i < 8; ++i) {
    CHECK(serial[static_cast<std::size_t>(i)].flat().size() == 129 * 2);
    CHECK(serial[static_cast<std::size_t>(i)].coord(0, 0) == 0.0);
    CHECK(serial[static_cast<std::size_t>(i)].coord(0, 1) == 0.0);
    for (std::size_t k = 0; k < 129; ++k) {
      CHECK(serial[static_cast<std::size_t>(i)].coord(k, 0) ==
            parallel[static_cast<std::size_t>(i)].coord(k, 0));
    }
  }
}

TEST_CASE("assembled paths satisfy the covariance law") {
  // Monte Carlo against scalar_fbm_covariance in three probe directions on a
  // coarse grid, plus the Q-projection variance anchors.
  const TimeGrid grid{1.0, 8};
  const SpdMatrix q(2, {4.0, 1.0, 1.0, 2.0});
  const HurstIndex h(0.6);
  const PathSampler sampler(h, q, grid);
  const std::size_t paths = 30000;
  const RandomSeed seed{2024};

  const std::vector<std::vector<double>> dirs{{1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}};
  // samples[dir][path][k] = <X(t_k), e>
  std::vector<std::vector<std::vector<double>>> proj(
      dirs.size(), std::vector<std::vector<double>>(paths, std::vector<double>(9)));
  PathSampler::Workspace ws;
  for (std::size_t p = 0; p < paths; ++p) {
    const VectorPath path = sampler.sample(seed, p, ws);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      for (std::size_t k = 0; k <= 8; ++k) {
        proj[d][p][k] = dirs[d][0] * path.coord(k, 0) + dirs[d][1] * path.coord(k, 1);
      }
    }
  }
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const double qe = q.quad_form(dirs[d]);
    for (std::size_t j = 1; j <= 8; ++j) {
      for (std::size_t k = j; k <= 8; ++k) {
        std::vector<double> prod(paths);
        for (std::size_t p = 0; p < paths; ++p) prod[p] = proj[d][p][j] * proj[d][p][k];
        double mean = 0.0;
        for (double v : prod) mean += v;
        mean /= static_cast<double>(paths);
        double var = 0.0;
        for (double v : prod) var += (v - mean) * (v - mean);
        const double se = std::sqrt(var / static_cast<double>(paths - 1) / static_cast<double>(paths));
        const double expect = scalar_fbm_covariance(grid.time(j), grid.time(k), h, qe);
        INFO("dir=", d, " j=", j, " k=", k);
        CHECK(std::abs(mean - expect) < 4.5 * se);
      }
    }
  }
}

TEST_CASE("cross covariance matches Q off-diagonal") {
  const TimeGrid grid{1.0, 16};
  const SpdMatrix q(2, {1.0, 0.5, 0.5, 1.0});
  const PathSampler sampler(HurstIndex(0.5), q, grid);
  const std::size_t paths = 40000;
  std::vector<double> prod(paths);
  PathSampler::Workspace ws;
  for (std::size_t p = 0; p < paths; ++p) {
    const VectorPath path = sampler.sample(RandomSeed{7}, p, ws);
    prod[p] = path.coord(16, 0) * path.coord(16, 1);
  }
  double mean = 0.0;
  for (double v : prod) mean += v;
  mean /= static_cast<double>(paths);
  double var = 0.0;
  for (double v : prod) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / static_cast<double>(paths - 1) / static_cast<double>(paths));
  CHECK(std::abs(mean - 0.5) < 4.0 * se);
}

TEST_CASE("reverse_path is an exact involution with fixed endpoints") {
  const TimeGrid grid{1.0, 64};
  const PathSampler sampler(HurstIndex(0.3), SpdMatrix::identity(3), grid);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const VectorPath path = sampler.sample(RandomSeed{99}, i);
    const VectorPath rev = reverse_path(path);
    CHECK(rev.coord(0, 0) == 0.0);
    CHECK(rev.coord(0, 1) == 0.0);
    for (int c = 0; c < 3; ++c) CHECK(rev.coord(64, c) == path.coord(64, c));
    const VectorPath back = reverse_path(rev);
    CHECK(back.flat().size() == path.flat().size());
    for (std::size_t j = 0; j < path.flat().size(); ++j) {
      CHECK(back.flat()[j] == path.flat()[j]);  // bit-exact involution
    }
  }
}

TEST_CASE("lamperti transform basics") {
  const TimeGrid grid{1.0, 256};
  const HurstIndex h(0.6);
  const PathSampler sampler(h, SpdMatrix::identity(2), grid);
  const VectorPath path = sampler.sample(RandomSeed{3}, 0);

  // u = 0 gives X(1) exactly.
  const auto at0 = lamperti_transform(path, h, std::vector<double>{0.0});
  CHECK(at0.size() == 1);
  CHECK(at0[0][0] == path.coord(256, 0));
  CHECK(at0[0][1] == path.coord(256, 1));

  CHECK_THROWS_AS(lamperti_transform(path, h, std::vector<double>{0.5}), OutOfHorizon);
}

TEST_CASE("lamperti on a constant path gives a constant quadrant indicator") {
  VectorPath path(TimeGrid{1.0, 32}, 2);
  for (std::size_t k = 1; k <= 32; ++k) {
    path.coord(k, 0) = 0.7;
    path.coord(k, 1) = 1.3;
  }
  const HurstIndex h(0.4);
  std::vector<double> us;
  for (double u = -3.0; u <= 0.0; u += 0.25) us.push_back(u);
  const auto vals = lamperti_transform(path, h, us);
  double avg = 0.0;
  for (const auto& v : vals) {
    // e^{-Hu} > 0 keeps the sign pattern; the indicator never flips.
    CHECK(v[0] > 0.0);
    CHECK(v[1] > 0.0);
    avg += 1.0;
  }
  avg /= static_cast<double>(vals.size());
  CHECK(avg == 1.0);  // time average equals the pointwise indicator exactly
}

TEST_CASE("lamperti marginal covariance is stationary and equals Q") {
  const TimeGrid grid{1.0, 1024};
  const HurstIndex h(0.7);
  const SpdMatrix q(2, {1.5, -0.4, -0.4, 1.0});
  const PathSampler sampler(h, q, grid);
  const std::size_t paths = 20000;
  const std::vector<double> us{0.0, -1.5};

  for (double u : us) {
    std::vector<double> xx(paths), yy(paths), xy(paths);
    PathSampler::Workspace ws;
    for (std::size_t p = 0; p < paths; ++p) {
      const VectorPath path = sampler.sample(RandomSeed{11}, p, ws);
      const auto l = lamperti_transform(path, h, std::vector<double>{u});
      xx[p] = l[0][0] * l[0][0];
      yy[p] = l[0][1] * l[0][1];
      xy[p] = l[0][0] * l[0][1];
    }
    auto check_entry = [&](std::vector<double>& vals, double target) {
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= static_cast<double>(paths);
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      const double se =
          std::sqrt(var / static_cast<double>(paths - 1) / static_cast<double>(paths));
      INFO("u=", u, " target=", target, " mean=", mean);
      CHECK(std::abs(mean - target) < 4.0 * se);
    };
    check_entry(xx, q.at(0, 0));
    check_entry(yy, q.at(1, 1));
    check_entry(xy, q.at(0, 1));
  }
}

TEST_CASE("scale_path is exact relabeling") {
  const TimeGrid grid{1.0, 128};
  const HurstIndex h(0.8);
  const PathSampler sampler(h, SpdMatrix::identity(2), grid);
  const VectorPath path = sampler.sample(RandomSeed{17}, 4);

  const VectorPath same = scale_path(path, 1.0, h);
  for (std::size_t j = 0; j < path.flat().size(); ++j) CHECK(same.flat()[j] == path.flat()[j]);

  const double c = 3.7;
  const VectorPath scaled = scale_path(path, c, h);
  CHECK(scaled.grid().horizon == doctest::Approx(c));
  const double factor = std::pow(c, h.value());
  for (std::size_t k = 0; k < path.points(); ++k) {
    for (int i = 0; i < 2; ++i) {
      // Sign pattern preserved exactly.
      CHECK(std::signbit(scaled.coord(k, i)) == std::signbit(path.coord(k, i)));
      CHECK((scaled.coord(k, i) == 0.0) == (path.coord(k, i) == 0.0));
    }
    // Pairwise distances scale by exactly c^H up to roundoff.
    if (k > 0) {
      const double d0 = std::hypot(path.coord(k, 0) - path.coord(k - 1, 0),
                                   path.coord(k, 1) - path.coord(k - 1, 1));
      const double d1 = std::hypot(scaled.coord(k, 0) - scaled.coord(k - 1, 0),
                                   scaled.coord(k, 1) - scaled.coord(k - 1, 1));
      CHECK(d1 == doctest::Approx(factor * d0).epsilon(1e-12));
    }
  }
}
