#include "fbmhull/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace fbmhull {

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_pow2(n) || n < 2) {
    throw std::invalid_argument("Fft: size must be a power of two >= 2");
  }
  rev_.resize(n);
  rev_[0] = 0;
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 1; i < n; ++i) {
    rev_[i] = (rev_[i >> 1] >> 1) | ((i & 1) << (bits - 1));
  }
  w_.resize(n / 2);
  const double step = -2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = step * static_cast<double>(k);
    w_[k] = {std::cos(a), std::sin(a)};
  }
}

std::size_t Fft::next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void Fft::transform(std::span<std::complex<double>> a, bool invert) const {
  if (a.size() != n_) throw std::invalid_argument("Fft: buffer size mismatch");
  auto* data = a.data();
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < rev_[i]) std::swap(data[i], data[rev_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n_ / len;
    for (std::size_t block = 0; block < n_; block += len) {
      std::size_t tw = 0;
      for (std::size_t j = 0; j < half; ++j, tw += stride) {
        std::complex<double> w = w_[tw];
        if (invert) w = std::conj(w);
        const std::complex<double> u = data[block + j];
        const std::complex<double> v = data[block + j + half] * w;
        data[block + j] = u + v;
        data[block + j + half] = u - v;
      }
    }
  }
  if (invert) {
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= inv;
  }
}

void Fft::forward(std::span<std::complex<double>> a) const { transform(a, false); }
void Fft::inverse(std::span<std::complex<double>> a) const { transform(a, true); }

}  // namespace fbmhull
