#include "fbmhull/predicates.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

// Expansion arithmetic after Shewchuk (adaptive precision floating-point).
// Products use fma, so no Split step is needed. The exact path is only taken
// when the floating-point filter cannot certify a sign, which for random
// inputs is rare; clarity wins over the fully adaptive staging.

namespace fbmhull {
namespace {

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwErrA = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dErrA = (7.0 + 56.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_prod(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// Fixed-capacity expansion: nonoverlapping components, increasing magnitude.
struct Expansion {
  static constexpr std::size_t kCap = 256;
  double c[kCap];
  std::size_t len = 0;

  void set_two(double hi, double lo) {
    len = 0;
    if (lo != 0.0) c[len++] = lo;
    if (hi != 0.0) c[len++] = hi;
    if (len == 0) c[len++] = 0.0;
  }

  double sign_value() const {
    for (std::size_t i = len; i-- > 0;) {
      if (c[i] != 0.0) return c[i];
    }
    return 0.0;
  }
};

// h = e + b, one scalar grown into an expansion (Shewchuk grow_expansion).
void grow(const Expansion& e, double b, Expansion& h) {
  double q = b;
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.len; ++i) {
    double sum, err;
    two_sum(q, e.c[i], sum, err);
    if (err != 0.0) h.c[out++] = err;
    q = sum;
  }
  if (q != 0.0 || out == 0) h.c[out++] = q;
  h.len = out;
}

void add(const Expansion& e, const Expansion& f, Expansion& h) {
  Expansion a = e;
  Expansion b;
  Expansion* src = &a;
  Expansion* dst = &b;
  for (std::size_t i = 0; i < f.len; ++i) {
    grow(*src, f.c[i], *dst);
    std::swap(src, dst);
  }
  h = *src;
}

void negate(Expansion& e) {
  for (std::size_t i = 0; i < e.len; ++i) e.c[i] = -e.c[i];
}

// h = e * b for scalar b, exact.
void scale(const Expansion& e, double b, Expansion& h) {
  Expansion acc;
  acc.c[0] = 0.0;
  acc.len = 1;
  Expansion term, next;
  for (std::size_t i = 0; i < e.len; ++i) {
    double hi, lo;
    two_prod(e.c[i], b, hi, lo);
    term.set_two(hi, lo);
    add(acc, term, next);
    acc = next;
  }
  h = acc;
}

// h = e * f where f has at most 2 components.
void mul_small(const Expansion& e, const Expansion& f, Expansion& h) {
  Expansion acc;
  acc.c[0] = 0.0;
  acc.len = 1;
  Expansion part, next;
  for (std::size_t i = 0; i < f.len; ++i) {
    scale(e, f.c[i], part);
    add(acc, part, next);
    acc = next;
  }
  h = acc;
}

double orient2d_exact(const double* pa, const double* pb, const double* pc) {
  Expansion acx, acy, bcx, bcy;
  double hi, lo;
  two_diff(pa[0], pc[0], hi, lo);
  acx.set_two(hi, lo);
  two_diff(pa[1], pc[1], hi, lo);
  acy.set_two(hi, lo);
  two_diff(pb[0], pc[0], hi, lo);
  bcx.set_two(hi, lo);
  two_diff(pb[1], pc[1], hi, lo);
  bcy.set_two(hi, lo);

  Expansion left, right, det;
  mul_small(acx, bcy, left);
  mul_small(acy, bcx, right);
  negate(right);
  add(left, right, det);
  return det.sign_value();
}

double orient3d_exact(const double* pa, const double* pb, const double* pc, const double* pd) {
  Expansion adx, ady, adz, bdx, bdy, bdz, cdx, cdy, cdz;
  double hi, lo;
  two_diff(pa[0], pd[0], hi, lo);
  adx.set_two(hi, lo);
  two_diff(pa[1], pd[1], hi, lo);
  ady.set_two(hi, lo);
  two_diff(pa[2], pd[2], hi, lo);
  adz.set_two(hi, lo);
  two_diff(pb[0], pd[0], hi, lo);
  bdx.set_two(hi, lo);
  two_diff(pb[1], pd[1], hi, lo);
  bdy.set_two(hi, lo);
  two_diff(pb[2], pd[2], hi, lo);
  bdz.set_two(hi, lo);
  two_diff(pc[0], pd[0], hi, lo);
  cdx.set_two(hi, lo);
  two_diff(pc[1], pd[1], hi, lo);
  cdy.set_two(hi, lo);
  two_diff(pc[2], pd[2], hi, lo);
  cdz.set_two(hi, lo);

  auto minor = [](const Expansion& p, const Expansion& q, const Expansion& r, const Expansion& s,
                  Expansion& out) {
    // out = p*q - r*s
    Expansion pq, rs;
    mul_small(p, q, pq);
    mul_small(r, s, rs);
    negate(rs);
    add(pq, rs, out);
  };

  Expansion m1, m2, m3, t1, t2, t3, s12, det;
  minor(bdx, cdy, cdx, bdy, m1);
  minor(cdx, ady, adx, cdy, m2);
  minor(adx, bdy, bdx, ady, m3);
  mul_small(m1, adz, t1);
  mul_small(m2, bdz, t2);
  mul_small(m3, cdz, t3);
  add(t1, t2, s12);
  add(s12, t3, det);
  return det.sign_value();
}

}  // namespace

double orient2d(const double* pa, const double* pb, const double* pc) {
  const double detleft = (pa[0] - pc[0]) * (pb[1] - pc[1]);
  const double detright = (pa[1] - pc[1]) * (pb[0] - pc[0]);
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det;
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det;
    detsum = -detleft - detright;
  } else {
    return det;
  }
  const double errbound = kCcwErrA * detsum;
  if (det >= errbound || -det >= errbound) return det;
  return orient2d_exact(pa, pb, pc);
}

int orient2d_sign(const double* pa, const double* pb, const double* pc) {
  const double v = orient2d(pa, pb, pc);
  return (v > 0.0) - (v < 0.0);
}

double orient3d(const double* pa, const double* pb, const double* pc, const double* pd) {
  const double adx = pa[0] - pd[0], ady = pa[1] - pd[1], adz = pa[2] - pd[2];
  const double bdx = pb[0] - pd[0], bdy = pb[1] - pd[1], bdz = pb[2] - pd[2];
  const double cdx = pc[0] - pd[0], cdy = pc[1] - pd[1], cdz = pc[2] - pd[2];

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double errbound = kO3dErrA * permanent;
  if (det > errbound || -det > errbound) return det;
  return orient3d_exact(pa, pb, pc, pd);
}

int orient3d_sign(const double* pa, const double* pb, const double* pc, const double* pd) {
  const double v = orient3d(pa, pb, pc, pd);
  return (v > 0.0) - (v < 0.0);
}

int cross3_component_sign(const double* pa, const double* pb, const double* pc, int i) {
  // Component i of (b-a) x (c-a) equals the 2x2 determinant of the other two
  // coordinates, which is orient2d on that coordinate-plane projection.
  const int u = (i + 1) % 3;
  const int v = (i + 2) % 3;
  const double a2[2] = {pa[u], pa[v]};
  const double b2[2] = {pb[u], pb[v]};
  const double c2[2] = {pc[u], pc[v]};
  return orient2d_sign(a2, b2, c2);
}

bool collinear3d(const double* pa, const double* pb, const double* pc) {
  return cross3_component_sign(pa, pb, pc, 0) == 0 && cross3_component_sign(pa, pb, pc, 1) == 0 &&
         cross3_component_sign(pa, pb, pc, 2) == 0;
}

}  // namespace fbmhull
