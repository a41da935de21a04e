#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "fbmhull/convex.hpp"
#include "fbmhull/fbm.hpp"

namespace fbmhull {

// Relative margin for "strictly interior" decisions on evolving hulls:
// interior means clearance > kInteriorMargin * hull diameter.
inline constexpr double kInteriorMargin = 1e-12;

struct GrowthEvent {
  std::size_t index = 0;         // grid index that grew the hull
  std::size_t vertex_count = 0;  // after insertion
  HullFunctionals functionals;   // after insertion
};

// The evolving convex hull V(t_k) of a path, with its growth events.
class HullTrajectory {
 public:
  HullTrajectory(int dim, std::size_t points);

  int dim() const { return dim_; }
  const std::vector<bool>& grew() const { return grew_; }
  const std::vector<GrowthEvent>& events() const { return events_; }
  const Hull2& final_hull2() const { return std::get<Hull2>(final_); }
  const Hull3& final_hull3() const { return std::get<Hull3>(final_); }

 private:
  friend HullTrajectory evolve_hull(const VectorPath& path);

  int dim_;
  std::vector<bool> grew_;
  std::vector<GrowthEvent> events_;
  std::variant<Hull2, Hull3> final_;
};

// Folds hull insertion over the samples in time order (d in {2,3}),
// recording growth flags and per-event functionals.
HullTrajectory evolve_hull(const VectorPath& path);

// Indices k with grew[k]; the complement is the discrete constancy set.
std::vector<std::size_t> growth_times(const HullTrajectory& traj);

// First-hit bookkeeping of the open quadrants D_theta and the origin
// interiority time along a path.
struct CoverRecord {
  std::vector<std::optional<std::size_t>> first_hit;  // size 2^d, by quadrant bits
  std::optional<std::size_t> cover_index;
  std::optional<std::size_t> origin_interior_index;
};

inline constexpr int kMaxCoverDim = 6;

// Scans samples in order: first_hit[theta] is the first k >= 1 whose sample
// lies in the open quadrant theta; cover_index the first k with every
// quadrant hit; origin_interior_index the first k whose prefix hull strictly
// surrounds the origin (exact hull route for d <= 3, separation-LP
// bisection above).
CoverRecord quadrant_cover(const VectorPath& path);

// Is X(t_n) interior to the hull of the whole path?
// Evaluated by the direct separation route; endpoint_interior_routes exposes
// the reversed-path origin route alongside it, and endpoint_interior insists
// that the two agree.
struct EndpointInteriorRoutes {
  bool direct = false;
  bool reversed = false;
};
EndpointInteriorRoutes endpoint_interior_routes(const VectorPath& path);
bool endpoint_interior(const VectorPath& path);

}  // namespace fbmhull
