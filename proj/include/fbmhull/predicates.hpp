#pragma once

namespace fbmhull {

// Sign-exact orientation predicates: a filtered double evaluation with an
// exact expansion-arithmetic fallback when the filter cannot certify the
// sign. Return values are approximate but their sign is exact.

// > 0 iff c lies to the left of the directed line a -> b.
double orient2d(const double* pa, const double* pb, const double* pc);
int orient2d_sign(const double* pa, const double* pb, const double* pc);

// > 0 iff d lies on the negative side of the plane through a, b, c oriented
// so that a, b, c appear counterclockwise when viewed from the positive side.
double orient3d(const double* pa, const double* pb, const double* pc, const double* pd);
int orient3d_sign(const double* pa, const double* pb, const double* pc, const double* pd);

// Exact test: are a, b, c collinear in 3-space?
bool collinear3d(const double* pa, const double* pb, const double* pc);

// Exact sign of component i of (b - a) x (c - a).
int cross3_component_sign(const double* pa, const double* pb, const double* pc, int i);

}  // namespace fbmhull
