#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fbmhull/hull2.hpp"
#include "fbmhull/hull3.hpp"

namespace fbmhull {

// Volume / surface / diameter triple; 2-D reads area and boundary length.
// Degenerate hulls report all zeros with the flag set.
struct HullFunctionals {
  double volume = 0.0;
  double surface = 0.0;
  double diameter = 0.0;
  bool degenerate = false;
};

HullFunctionals hull_functionals(const Hull2& hull);
HullFunctionals hull_functionals(const Hull3& hull);

// max over vertices of <v, u>.
double support_function(const Hull2& hull, const Vec2& u);
double support_function(const Hull3& hull, const Vec3& u);

// Probe directions for support-based computations: m unit vectors spanning
// the space. Validated on construction.
class DirectionSet {
 public:
  DirectionSet(int dim, std::vector<double> flat);
  static DirectionSet circle(int count);           // d = 2, uniform angles
  static DirectionSet fibonacci_sphere(int count);  // d = 3

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(flat_.size()) / dim_; }
  std::span<const double> direction(int i) const {
    return {flat_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }

 private:
  int dim_;
  std::vector<double> flat_;
};

// Support-probe Hausdorff distance: max over the direction set of
// |h_A(u) - h_B(u)|. A guaranteed lower bound that converges to the metric
// as the direction count grows.
double hausdorff_distance(const Hull2& a, const Hull2& b, int directions = 1024);
double hausdorff_distance(const Hull3& a, const Hull3& b, int directions = 4096);

// Binary orthant word: bit i set iff x_i > 0. Only defined off the
// coordinate hyperplanes.
struct QuadrantIndex {
  unsigned bits = 0;
  int dim = 0;
  friend bool operator==(const QuadrantIndex&, const QuadrantIndex&) = default;
};

// Open-quadrant classification; nullopt when any coordinate is exactly zero.
std::optional<QuadrantIndex> quadrant_of(std::span<const double> x);

// Positive iff the origin is strictly interior; then the distance from the
// origin to the nearest facet plane. Otherwise -distance(0, hull), which is
// monotone under point insertion. Degenerate hulls give 0.
double origin_inradius(const Hull2& hull);
double origin_inradius(const Hull3& hull);

}  // namespace fbmhull
