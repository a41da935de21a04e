#include "fbmhull/fbm.hpp"

#include <cmath>
#include <stdexcept>

#include "fbmhull/errors.hpp"

namespace fbmhull {

HurstIndex::HurstIndex(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument("HurstIndex: H must lie in (0,1)");
  }
}

SpdMatrix::SpdMatrix(int dim, std::vector<double> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim < 1) throw std::invalid_argument("SpdMatrix: dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(dim) * dim) {
    throw std::invalid_argument("SpdMatrix: entry count mismatch");
  }
  double scale = 0.0;
  for (double v : entries_) scale = std::max(scale, std::abs(v));
  const double sym_tol = 1e-12 * std::max(scale, 1.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > sym_tol) {
        throw std::invalid_argument("SpdMatrix: matrix not symmetric");
      }
    }
  }
  // Dense lower Cholesky; failure means the matrix is not positive definite
  // (rank < d), which the hull results require to be rejected.
  chol_.assign(entries_.size(), 0.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = at(i, j);
      for (int k = 0; k < j; ++k) {
        sum -= chol_[static_cast<std::size_t>(i) * dim + k] *
               chol_[static_cast<std::size_t>(j) * dim + k];
      }
      if (i == j) {
        if (sum <= 0.0) throw std::invalid_argument("SpdMatrix: not positive definite");
        chol_[static_cast<std::size_t>(i) * dim + i] = std::sqrt(sum);
      } else {
        chol_[static_cast<std::size_t>(i) * dim + j] =
            sum / chol_[static_cast<std::size_t>(j) * dim + j];
      }
    }
  }
}

SpdMatrix SpdMatrix::identity(int dim) {
  std::vector<double> e(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return SpdMatrix(dim, std::move(e));
}

double SpdMatrix::quad_form(std::span<const double> e) const {
  if (e.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("SpdMatrix: direction dimension mismatch");
  }
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) acc += e[i] * at(i, j) * e[j];
  }
  return acc;
}

bool SpdMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (at(i, j) != (i == j ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

VectorPath::VectorPath(TimeGrid grid, int dim)
    : grid_(grid), dim_(dim), data_(grid.points() * static_cast<std::size_t>(dim), 0.0) {
  if (dim < 1) throw std::invalid_argument("VectorPath: dimension must be positive");
  if (grid.steps < 1 || !(grid.horizon > 0.0)) {
    throw std::invalid_argument("VectorPath: grid must have positive horizon and steps");
  }
}

double scalar_fbm_covariance(double t, double s, const HurstIndex& h, double q) {
  if (t < 0.0 || s < 0.0) throw std::invalid_argument("scalar_fbm_covariance: t, s must be >= 0");
  const double two_h = h.two_h();
  return q * 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

namespace {

// Sampled coordinates are snapped to multiples of 2^-40. On that grid the
// reversal algebra X(t_n) - X(t_{n-k}) is exact in double precision (integer
// arithmetic below 2^53), so reversal is a bit-exact involution. The
// perturbation (< 1e-12) is far below every statistical tolerance used here.
constexpr double kQuantum = 0x1p-40;
constexpr double kInvQuantum = 0x1p40;

inline double quantize(double v) { return std::nearbyint(v * kInvQuantum) * kQuantum; }

}  // namespace

PathSampler::PathSampler(HurstIndex h, SpdMatrix q, TimeGrid grid, Generator generator)
    : h_(h), q_(std::move(q)), grid_(grid), kind_(generator) {
  if (grid_.steps < 2) throw std::invalid_argument("PathSampler: grid needs at least 2 steps");
  if (kind_ == Generator::Spectral) {
    spectral_ = std::make_shared<SpectralFgnEngine>(grid_.steps, h_);
  } else {
    cholesky_ = std::make_shared<CholeskyFgnEngine>(grid_.steps, h_);
  }
}

VectorPath PathSampler::sample(RandomSeed seed, std::uint64_t path_index, Workspace& ws) const {
  const int d = q_.dim();
  const std::size_t n = grid_.steps;
  VectorPath path(grid_, d);
  path.meta = {h_.value(), seed.master, path_index};

  GaussianRng rng(seed.stream(path_index));
  ws.noise.resize(n);
  const double step_scale = std::pow(grid_.dt(), h_.value());

  // Unit-spaced fGn per coordinate, cumulative sums scaled by (T/n)^H.
  // Coordinates are drawn sequentially from one stream, so a path is a pure
  // function of (master, index).
  for (int i = 0; i < d; ++i) {
    if (kind_ == Generator::Spectral) {
      spectral_->sample(rng, ws.noise, ws.scratch);
    } else {
      cholesky_->sample(rng, ws.noise);
    }
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += ws.noise[k - 1];
      path.coord(k, i) = step_scale * acc;
    }
  }

  // Mix coordinates through the lower Cholesky factor of Q, slice by slice.
  if (!q_.is_identity()) {
    const std::vector<double>& a = q_.cholesky_lower();
    std::vector<double> tmp(d);
    for (std::size_t k = 1; k <= n; ++k) {
      for (int i = 0; i < d; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) acc += a[static_cast<std::size_t>(i) * d + j] * path.coord(k, j);
        tmp[i] = acc;
      }
      for (int i = 0; i < d; ++i) path.coord(k, i) = tmp[i];
    }
  }
  for (double& v : path.flat_mut()) v = quantize(v);
  return path;
}

VectorPath PathSampler::sample(RandomSeed seed, std::uint64_t path_index) const {
  Workspace ws;
  return sample(seed, path_index, ws);
}

VectorPath assemble_fbm_path(const HurstIndex& h, const SpdMatrix& q, TimeGrid grid,
                             RandomSeed seed, std::uint64_t path_index) {
  PathSampler sampler(h, q, grid);
  return sampler.sample(seed, path_index);
}

VectorPath reverse_path(const VectorPath& path) {
  const std::size_t n = path.grid().steps;
  const int d = path.dim();
  VectorPath rev(path.grid(), d);
  rev.meta = path.meta;
  for (std::size_t k = 0; k <= n; ++k) {
    for (int i = 0; i < d; ++i) {
      rev.coord(k, i) = path.coord(n, i) - path.coord(n - k, i);
    }
  }
  return rev;
}

std::vector<std::vector<double>> lamperti_transform(const VectorPath& path, const HurstIndex& h,
                                                    std::span<const double> u_grid) {
  const TimeGrid& grid = path.grid();
  const int d = path.dim();
  std::vector<std::vector<double>> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    const double t = std::exp(u);
    if (t > grid.horizon * (1.0 + 1e-12)) {
      throw OutOfHorizon("lamperti_transform: e^u = " + std::to_string(t) +
                         " exceeds horizon " + std::to_string(grid.horizon));
    }
    // Nearest grid point; no interpolation so the sample stays Gaussian.
    std::size_t k = static_cast<std::size_t>(
        std::llround(t / grid.horizon * static_cast<double>(grid.steps)));
    if (k > grid.steps) k = grid.steps;
    const double damp = std::exp(-h.value() * u);
    std::vector<double> value(d);
    for (int i = 0; i < d; ++i) value[i] = damp * path.coord(k, i);
    out.push_back(std::move(value));
  }
  return out;
}

VectorPath scale_path(const VectorPath& path, double c, const HurstIndex& h) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_path: c must be positive");
  const TimeGrid& g = path.grid();
  VectorPath scaled(TimeGrid{c * g.horizon, g.steps}, path.dim());
  scaled.meta = path.meta;
  const double factor = std::pow(c, h.value());
  for (std::size_t k = 0; k < path.points(); ++k) {
    for (int i = 0; i < path.dim(); ++i) {
      scaled.coord(k, i) = factor * path.coord(k, i);
    }
  }
  return scaled;
}

}  // namespace fbmhull
