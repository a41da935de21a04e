#include "fbmhull/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbmhull/errors.hpp"
#include "fbmhull/fbm.hpp"

namespace fbmhull {

double fgn_autocovariance(std::int64_t k, const HurstIndex& h) {
  if (k < 0) k = -k;
  const double two_h = h.two_h();
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  return 0.5 * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) +
                std::pow(kd - 1.0, two_h));
}

std::vector<double> circulant_spectrum(std::span<const double> acov_half, double clamp_tol) {
  const std::size_t m = acov_half.size() - 1;
  if (m < 1 || !Fft::is_pow2(m)) {
    throw std::invalid_argument("circulant_spectrum: need r(0..m) with m a power of two");
  }
  const std::size_t big = 2 * m;
  std::vector<std::complex<double>> c(big);
  for (std::size_t j = 0; j <= m; ++j) c[j] = acov_half[j];
  for (std::size_t j = m + 1; j < big; ++j) c[j] = acov_half[big - j];

  Fft fft(big);
  fft.forward(c);

  std::vector<double> lambda(big);
  double max_eig = 0.0;
  for (std::size_t k = 0; k < big; ++k) {
    lambda[k] = c[k].real();
    max_eig = std::max(max_eig, lambda[k]);
  }
  const double floor = -clamp_tol * max_eig;
  for (std::size_t k = 0; k < big; ++k) {
    if (lambda[k] < 0.0) {
      if (lambda[k] < floor) {
        throw EmbeddingFailure("circulant embedding eigenvalue " + std::to_string(lambda[k]) +
                               " below clamp tolerance");
      }
      lambda[k] = 0.0;
    }
  }
  return lambda;
}

SpectralFgnEngine::SpectralFgnEngine(std::size_t n, const HurstIndex& h)
    : n_(n), m_(Fft::next_pow2(std::max<std::size_t>(n, 2))), fft_(2 * m_) {
  if (n < 2) throw std::invalid_argument("SpectralFgnEngine: n must be >= 2");
  std::vector<double> r(m_ + 1);
  for (std::size_t k = 0; k <= m_; ++k) {
    r[k] = fgn_autocovariance(static_cast<std::int64_t>(k), h);
  }
  const std::vector<double> lambda = circulant_spectrum(r);
  const std::size_t big = 2 * m_;
  const double inv_big = 1.0 / static_cast<double>(big);
  amp_.resize(big);
  // Endpoint bins carry one real normal each, interior bins a complex pair.
  amp_[0] = std::sqrt(lambda[0] * inv_big);
  amp_[m_] = std::sqrt(lambda[m_] * inv_big);
  for (std::size_t k = 1; k < m_; ++k) {
    const double a = std::sqrt(0.5 * lambda[k] * inv_big);
    amp_[k] = a;
    amp_[big - k] = a;
  }
}

void SpectralFgnEngine::sample(GaussianRng& rng, std::span<double> out, Scratch& scratch) const {
  if (out.size() != n_) throw std::invalid_argument("SpectralFgnEngine: output size mismatch");
  const std::size_t big = 2 * m_;
  auto& freq = scratch.freq;
  freq.resize(big);

  freq[0] = amp_[0] * rng.normal();
  freq[m_] = amp_[m_] * rng.normal();
  for (std::size_t k = 1; k < m_; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    freq[k] = {amp_[k] * re, amp_[k] * im};
    freq[big - k] = {amp_[k] * re, -amp_[k] * im};
  }

  fft_.forward(freq);
  for (std::size_t j = 0; j < n_; ++j) out[j] = freq[j].real();
}

CholeskyFgnEngine::CholeskyFgnEngine(std::size_t n, const HurstIndex& h, std::size_t cap)
    : n_(n) {
  if (n < 1) throw std::invalid_argument("CholeskyFgnEngine: n must be >= 1");
  if (n > cap) {
    throw OracleCapExceeded("CholeskyFgnEngine: n = " + std::to_string(n) +
                            " exceeds oracle cap " + std::to_string(cap));
  }
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = fgn_autocovariance(static_cast<std::int64_t>(k), h);
  }
  // Packed lower-triangular Cholesky of the Toeplitz matrix r(|i-j|).
  chol_.assign(n * (n + 1) / 2, 0.0);
  auto at = [this](std::size_t i, std::size_t j) -> double& {
    return chol_[i * (i + 1) / 2 + j];
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = r[i - j];
      for (std::size_t k = 0; k < j; ++k) sum -= at(i, k) * at(j, k);
      if (i == j) {
        if (sum <= 0.0) {
          throw std::runtime_error("CholeskyFgnEngine: covariance not positive definite");
        }
        at(i, i) = std::sqrt(sum);
      } else {
        at(i, j) = sum / at(j, j);
      }
    }
  }
}

void CholeskyFgnEngine::sample(GaussianRng& rng, std::span<double> out) const {
  if (out.size() != n_) throw std::invalid_argument("CholeskyFgnEngine: output size mismatch");
  std::vector<double> z(n_);
  for (std::size_t i = 0; i < n_; ++i) z[i] = rng.normal();
  const double* row = chol_.data();
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += row[j] * z[j];
    out[i] = acc;
    row += i + 1;
  }
}

std::vector<double> simulate_fgn_spectral(std::size_t n, const HurstIndex& h, std::uint64_t seed) {
  SpectralFgnEngine engine(n, h);
  SpectralFgnEngine::Scratch scratch;
  GaussianRng rng(seed);
  std::vector<double> out(n);
  engine.sample(rng, out, scratch);
  return out;
}

std::vector<double> simulate_fgn_cholesky(std::size_t n, const HurstIndex& h, std::uint64_t seed,
                                          std::size_t cap) {
  CholeskyFgnEngine engine(n, h, cap);
  GaussianRng rng(seed);
  std::vector<double> out(n);
  engine.sample(rng, out);
  return out;
}

}  // namespace fbmhull
