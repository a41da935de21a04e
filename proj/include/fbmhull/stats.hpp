#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbmhull {

// Point estimate with standard error and 95% confidence interval.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t count = 0;

  static McEstimate from_samples(std::span<const double> values);
  static McEstimate binomial(std::size_t successes, std::size_t trials);
};

// Two-sample Kolmogorov-Smirnov result with the asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double p_value = 1.0;
};

// Exact empirical-CDF sup distance; p-value from the Kolmogorov series with
// the usual finite-sample effective-size correction.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_sf(double x);

// Least-squares line fit; residual_norm is the l2 norm of the residuals.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> fitted;

  static SlopeFit least_squares(std::span<const double> x, std::span<const double> y);
};

}  // namespace fbmhull
