#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fbmhull::detail {

// Inserts p into a convex CCW polygon (>= 3 vertices, strict turns), given an
// exact orientation sign functor. Returns true iff p was strictly outside;
// the polygon then becomes the hull of the old vertices plus p, junction
// vertices that end up collinear with p being absorbed.
template <typename P, typename OrientFn>
bool convex_polygon_insert(std::vector<P>& poly, const P& p, OrientFn&& orient) {
  const std::size_t h = poly.size();
  std::vector<int> sign(h);
  bool any_visible = false;
  for (std::size_t k = 0; k < h; ++k) {
    sign[k] = orient(poly[k], poly[(k + 1) % h], p);
    if (sign[k] < 0) any_visible = true;
  }
  if (!any_visible) return false;  // inside or on the boundary

  // Visible edges form one contiguous cyclic run; find its start.
  std::size_t first = h;
  for (std::size_t k = 0; k < h; ++k) {
    if (sign[k] < 0 && sign[(k + h - 1) % h] >= 0) {
      first = k;
      break;
    }
  }
  if (first == h) {
    throw std::logic_error("convex_polygon_insert: no visibility boundary");
  }
  std::size_t run = 1;
  while (run < h && sign[(first + run) % h] < 0) ++run;

  std::vector<P> next;
  next.reserve(h - run + 2);
  // Keep the invisible chain from poly[first+run] around to poly[first].
  for (std::size_t t = 0; t <= h - run; ++t) {
    next.push_back(poly[(first + run + t) % h]);
  }
  next.push_back(p);

  // next = [.., junction_before, p]; absorb once per side if collinear.
  if (next.size() >= 4) {
    const std::size_t j = next.size() - 2;
    if (orient(next[j - 1], next[j], p) == 0) {
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(j));
    }
  }
  if (next.size() >= 4) {
    if (orient(next.back(), next[0], next[1]) == 0) {
      next.erase(next.begin());
    }
  }
  poly = std::move(next);
  return true;
}

}  // namespace fbmhull::detail
