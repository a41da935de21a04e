#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fbmhull/fgn.hpp"
#include "fbmhull/rng.hpp"

namespace fbmhull {

// Self-similarity index, open interval (0,1). H = 1/2 is standard Brownian
// motion.
class HurstIndex {
 public:
  explicit HurstIndex(double value);
  double value() const { return value_; }
  double two_h() const { return 2.0 * value_; }

 private:
  double value_;
};

// Symmetric positive definite covariance matrix of X(1), full rank d.
// Validated on construction: symmetry to machine tolerance and a successful
// Cholesky factorization.
class SpdMatrix {
 public:
  SpdMatrix(int dim, std::vector<double> row_major);
  static SpdMatrix identity(int dim);

  int dim() const { return dim_; }
  double at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

  // Lower Cholesky factor A with A A^T = Q, dense row-major d x d.
  const std::vector<double>& cholesky_lower() const { return chol_; }

  // <Q e, e>
  double quad_form(std::span<const double> e) const;

  bool is_identity() const;

 private:
  int dim_;
  std::vector<double> entries_;
  std::vector<double> chol_;
};

// Uniform grid t_k = k * horizon / steps, k = 0..steps.
struct TimeGrid {
  double horizon = 1.0;
  std::size_t steps = 0;

  double dt() const { return horizon / static_cast<double>(steps); }
  double time(std::size_t k) const {
    return horizon * (static_cast<double>(k) / static_cast<double>(steps));
  }
  std::size_t points() const { return steps + 1; }
};

// Master seed plus the per-path stream derivation rule.
struct RandomSeed {
  std::uint64_t master = 0;
  std::uint64_t stream(std::uint64_t path_index) const {
    return derive_stream_seed(master, path_index);
  }
};

struct PathMeta {
  double hurst = 0.5;
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
};

// A sampled d-dimensional trajectory on a time grid; samples[0] is the
// origin. Storage is (steps+1) x d row-major.
class VectorPath {
 public:
  VectorPath(TimeGrid grid, int dim);

  int dim() const { return dim_; }
  std::size_t points() const { return grid_.points(); }
  const TimeGrid& grid() const { return grid_; }

  double coord(std::size_t k, int i) const { return data_[k * dim_ + i]; }
  double& coord(std::size_t k, int i) { return data_[k * dim_ + i]; }
  std::span<const double> point(std::size_t k) const {
    return {data_.data() + k * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> flat() const { return data_; }
  std::span<double> flat_mut() { return data_; }

  PathMeta meta;

 private:
  TimeGrid grid_;
  int dim_;
  std::vector<double> data_;
};

// Scalar FBM covariance: q/2 (t^{2H} + s^{2H} - |t-s|^{2H}).
double scalar_fbm_covariance(double t, double s, const HurstIndex& h, double q);

// Samples d-dimensional FBM paths with E<X(t),e><X(s),e> equal to
// scalar_fbm_covariance(t, s, H, <Qe,e>) on grid points. Construction:
// d independent unit fGn streams, cumulative sums, (T/n)^H scaling, then the
// lower Cholesky factor of Q applied to each time slice.
class PathSampler {
 public:
  enum class Generator { Spectral, CholeskyOracle };

  PathSampler(HurstIndex h, SpdMatrix q, TimeGrid grid,
              Generator generator = Generator::Spectral);

  struct Workspace {
    std::vector<double> noise;
    SpectralFgnEngine::Scratch scratch;
  };

  // Deterministic in (seed.master, path_index); safe to call concurrently
  // with distinct workspaces.
  VectorPath sample(RandomSeed seed, std::uint64_t path_index, Workspace& ws) const;
  VectorPath sample(RandomSeed seed, std::uint64_t path_index) const;

  const HurstIndex& hurst() const { return h_; }
  const SpdMatrix& q() const { return q_; }
  const TimeGrid& grid() const { return grid_; }

 private:
  HurstIndex h_;
  SpdMatrix q_;
  TimeGrid grid_;
  Generator kind_;
  std::shared_ptr<const SpectralFgnEngine> spectral_;
  std::shared_ptr<const CholeskyFgnEngine> cholesky_;
};

VectorPath assemble_fbm_path(const HurstIndex& h, const SpdMatrix& q, TimeGrid grid,
                             RandomSeed seed, std::uint64_t path_index = 0);

// Y(t_k) = X(t_n) - X(t_{n-k}); exact arithmetic on samples.
VectorPath reverse_path(const VectorPath& path);

// L(u) = e^{-Hu} X(e^u), X evaluated at the nearest grid point.
// Throws OutOfHorizon if e^u exceeds the grid horizon.
std::vector<std::vector<double>> lamperti_transform(const VectorPath& path, const HurstIndex& h,
                                                    std::span<const double> u_grid);

// Pure relabeling: samples c^H X(t_k) on the grid with horizon c*T.
VectorPath scale_path(const VectorPath& path, double c, const HurstIndex& h);

}  // namespace fbmhull
