#include "fbmhull/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbmhull {

McEstimate McEstimate::from_samples(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("McEstimate: need at least 2 samples");
  const std::size_t m = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m - 1);
  McEstimate e;
  e.estimate = mean;
  e.std_error = std::sqrt(var / static_cast<double>(m));
  e.ci_low = mean - 1.96 * e.std_error;
  e.ci_high = mean + 1.96 * e.std_error;
  e.count = m;
  return e;
}

McEstimate McEstimate::binomial(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("McEstimate: zero trials");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  McEstimate e;
  e.estimate = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  e.ci_low = std::max(0.0, p - 1.96 * e.std_error);
  e.ci_high = std::min(1.0, p + 1.96 * e.std_error);
  e.count = trials;
  return e;
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * x * x);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < na && ib < nb) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < na && a[ia] <= v) ++ia;
    while (ib < nb && b[ib] <= v) ++ib;
    const double fa = static_cast<double>(ia) / static_cast<double>(na);
    const double fb = static_cast<double>(ib) / static_cast<double>(nb);
    d = std::max(d, std::abs(fa - fb));
  }
  KsResult r;
  r.statistic = d;
  r.n_a = na;
  r.n_b = nb;
  const double ne = std::sqrt(static_cast<double>(na) * static_cast<double>(nb) /
                              static_cast<double>(na + nb));
  r.p_value = kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d);
  return r;
}

SlopeFit SlopeFit::least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("SlopeFit: need matching samples, at least 2");
  }
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double nd = static_cast<double>(n);
  const double denom = nd * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("SlopeFit: degenerate abscissae");
  SlopeFit f;
  f.slope = (nd * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / nd;
  f.xs.assign(x.begin(), x.end());
  f.ys.assign(y.begin(), y.end());
  f.fitted.resize(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.fitted[i] = f.intercept + f.slope * x[i];
    const double r = y[i] - f.fitted[i];
    rss += r * r;
  }
  f.residual_norm = std::sqrt(rss);
  return f;
}

}  // namespace fbmhull
