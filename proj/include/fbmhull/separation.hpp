#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fbmhull {

// Certificate search for "x is not an interior point of conv(points)":
// returns a unit direction u with <p - x, u> <= tol for every p, or nullopt
// when x is certified interior. Tolerance scales with the point cloud.
//
// LP- and probe-based in every dimension; deliberately independent of the
// exact hull machinery so the two can cross-check each other.
std::optional<std::vector<double>> separating_direction(std::span<const double> points_flat,
                                                        int dim, std::span<const double> x,
                                                        double rel_tol = 1e-9);

inline bool point_strictly_interior(std::span<const double> points_flat, int dim,
                                    std::span<const double> x, double rel_tol = 1e-9) {
  return !separating_direction(points_flat, dim, x, rel_tol).has_value();
}

}  // namespace fbmhull
