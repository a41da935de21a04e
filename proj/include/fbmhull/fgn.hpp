#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fbmhull/fft.hpp"
#include "fbmhull/rng.hpp"

namespace fbmhull {

class HurstIndex;

// Autocovariance of unit-spaced fractional Gaussian noise:
// gamma(k) = ((k+1)^{2H} - 2 k^{2H} + (k-1)^{2H}) / 2.
double fgn_autocovariance(std::int64_t k, const HurstIndex& h);

// Eigenvalues of the 2m-circulant embedding of a stationary autocovariance
// given by its half row r(0..m). Provably nonnegative for fGn; roundoff
// negatives with magnitude <= clamp_tol * max eigenvalue are clamped to 0,
// anything worse throws EmbeddingFailure.
std::vector<double> circulant_spectrum(std::span<const double> acov_half,
                                       double clamp_tol = 1e-9);

// Exact stationary Gaussian sampling via circulant embedding (Davies-Harte).
// Setup is O(m log m) once; each sample costs one FFT of length 2m.
class SpectralFgnEngine {
 public:
  SpectralFgnEngine(std::size_t n, const HurstIndex& h);

  std::size_t length() const { return n_; }

  struct Scratch {
    std::vector<std::complex<double>> freq;
  };

  // Writes one fGn sample of length n. Thread safe for concurrent callers
  // with distinct rng/scratch.
  void sample(GaussianRng& rng, std::span<double> out, Scratch& scratch) const;

 private:
  std::size_t n_;
  std::size_t m_;  // pow2 >= n; circulant size is 2m
  Fft fft_;
  std::vector<double> amp_;  // per-frequency complex amplitudes, premultiplied
};

// Exact sampling through the Cholesky factor of the Toeplitz covariance.
// O(n^3) setup, O(n^2) per sample; the independent oracle for the spectral
// path, capped to keep the setup budget bounded.
class CholeskyFgnEngine {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 12;

  CholeskyFgnEngine(std::size_t n, const HurstIndex& h, std::size_t cap = kDefaultCap);

  std::size_t length() const { return n_; }

  void sample(GaussianRng& rng, std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> chol_;  // packed lower triangle, row-major
};

// One-shot helpers matching the engines above; seed is a derived stream seed.
std::vector<double> simulate_fgn_spectral(std::size_t n, const HurstIndex& h, std::uint64_t seed);
std::vector<double> simulate_fgn_cholesky(std::size_t n, const HurstIndex& h, std::uint64_t seed,
                                          std::size_t cap = CholeskyFgnEngine::kDefaultCap);

}  // namespace fbmhull
