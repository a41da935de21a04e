#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fbmhull {

// Iterative radix-2 FFT with precomputed twiddles and bit-reversal table.
// Size is fixed at construction and must be a power of two.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place DFT, kernel exp(-2*pi*i*jk/n).
  void forward(std::span<std::complex<double>> a) const;

  // In-place inverse DFT including the 1/n factor.
  void inverse(std::span<std::complex<double>> a) const;

  static bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
  static std::size_t next_pow2(std::size_t n);

 private:
  void transform(std::span<std::complex<double>> a, bool invert) const;

  std::size_t n_;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> w_;  // w_[k] = exp(-2*pi*i*k/n), k < n/2
};

}  // namespace fbmhull
