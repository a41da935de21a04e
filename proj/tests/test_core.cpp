#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "fbmhull/fft.hpp"
#include "fbmhull/parallel.hpp"
#include "fbmhull/rng.hpp"

using namespace fbmhull;

namespace {

// Quadratic-time DFT oracle.
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches the naive DFT") {
  for (std::size_t n : {2u, 8u, 64u, 256u}) {
    Xoshiro256pp rng(n);
    std::vector<std::complex<double>> a(n);
    for (auto& v : a) v = {rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    auto expect = naive_dft(a);
    auto got = a;
    Fft fft(n);
    fft.forward(got);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(got[k] - expect[k]) < 1e-9 * static_cast<double>(n));
    }
    fft.inverse(got);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(got[k] - a[k]) < 1e-12 * static_cast<double>(n));
    }
  }
}

TEST_CASE("fft rejects non-power-of-two sizes") {
  CHECK_THROWS(Fft(3));
  CHECK_THROWS(Fft(0));
  CHECK(Fft::next_pow2(1000) == 1024);
  CHECK(Fft::next_pow2(1024) == 1024);
}

TEST_CASE("stream derivation is deterministic and index-sensitive") {
  CHECK(derive_stream_seed(42, 0) == derive_stream_seed(42, 0));
  CHECK(derive_stream_seed(42, 0) != derive_stream_seed(42, 1));
  CHECK(derive_stream_seed(42, 7) != derive_stream_seed(43, 7));

  GaussianRng a(derive_stream_seed(9, 3));
  GaussianRng b(derive_stream_seed(9, 3));
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
}

TEST_CASE("gaussian sampler moments") {
  GaussianRng rng(1234);
  const std::size_t n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  const double nd = static_cast<double>(n);
  CHECK(std::abs(s1 / nd) < 4.0 / std::sqrt(nd));
  CHECK(std::abs(s2 / nd - 1.0) < 4.0 * std::sqrt(2.0 / nd));
  CHECK(std::abs(s4 / nd - 3.0) < 4.0 * std::sqrt(96.0 / nd));
}

TEST_CASE("parallel driver reproduces the serial reference bit-for-bit") {
  const std::size_t n = 500;
  auto work = [](std::size_t i) {
    GaussianRng rng(derive_stream_seed(77, i));
    double acc = 0.0;
    for (int k = 0; k < 50; ++k) acc += rng.normal() * rng.normal();
    return acc;
  };
  std::vector<double> serial(n), parallel4(n), parallel8(n);
  for_each_index_serial(n, [&](std::size_t i) { serial[i] = work(i); });
  for_each_index(n, 4, [&](std::size_t i) { parallel4[i] = work(i); });
  for_each_index(n, 8, [&](std::size_t i) { parallel8[i] = work(i); });
  CHECK(serial == parallel4);
  CHECK(serial == parallel8);
}

TEST_CASE("parallel driver propagates exceptions") {
  CHECK_THROWS_AS(for_each_index(64, 4,
                                 [](std::size_t i) {
                                   if (i == 13) throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
}
