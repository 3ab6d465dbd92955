#pragma once

#include <array>
#include <cmath>

#include "cagemap/geom.hpp"

// Exact sign orientation and incircle tests: a floating-point filter with a
// forward error bound, falling back to exact expansion arithmetic (error-free
// sums and products of doubles) when the filter cannot decide.  Requires
// strict IEEE double semantics; the build disables FMA contraction.

namespace cagemap {
namespace exact {

inline constexpr double kEps = 1.1102230246251565e-16;   // 2^-53
inline constexpr double kSplitter = 134217729.0;         // 2^27 + 1
inline constexpr double kCcwErrA = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kIccErrA = (10.0 + 96.0 * kEps) * kEps;

inline void fast_two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

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

inline void split(double a, double& hi, double& lo) {
  const double c = kSplitter * a;
  hi = c - (c - a);
  lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  double ahi, alo, bhi, blo;
  split(a, ahi, alo);
  split(b, bhi, blo);
  y = ((ahi * bhi - x) + ahi * blo + alo * bhi) + alo * blo;
}

// h = e + f for nonoverlapping expansions sorted by increasing magnitude;
// zero terms dropped.  Returns the length of h (at least 1; h[0] may be 0).
inline int expansion_sum(int elen, const double* e, int flen, const double* f,
                         double* h) {
  int ei = 0, fi = 0, hindex = 0;
  // Pop the smaller-magnitude head of the two expansions.
  auto next = [&]() {
    if (fi >= flen ||
        (ei < elen && ((f[fi] > e[ei]) == (f[fi] > -e[ei]))))
      return e[ei++];
    return f[fi++];
  };
  double q = next(), qnew, hh;
  if (ei < elen || fi < flen) {
    fast_two_sum(next(), q, qnew, hh);
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
    while (ei < elen || fi < flen) {
      two_sum(q, next(), qnew, hh);
      q = qnew;
      if (hh != 0.0) h[hindex++] = hh;
    }
  }
  if (q != 0.0 || hindex == 0) h[hindex++] = q;
  return hindex;
}

// h = e * b, zero terms dropped.
inline int scale_expansion(int elen, const double* e, double b, double* h) {
  double q, hh, product1, product0, sum;
  double bhi, blo;
  int hindex = 0;
  split(b, bhi, blo);
  two_product(e[0], b, q, hh);
  if (hh != 0.0) h[hindex++] = hh;
  for (int eindex = 1; eindex < elen; ++eindex) {
    const double enow = e[eindex];
    product1 = enow * b;
    double ehi, elo;
    split(enow, ehi, elo);
    product0 = ((ehi * bhi - product1) + ehi * blo + elo * bhi) + elo * blo;
    two_sum(q, product0, sum, hh);
    if (hh != 0.0) h[hindex++] = hh;
    fast_two_sum(product1, sum, q, hh);
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (q != 0.0 || hindex == 0) h[hindex++] = q;
  return hindex;
}

// Sign of the expansion: sign of its largest-magnitude (last) component.
inline double expansion_value(int len, const double* e) { return e[len - 1]; }

// 4-component expansion of p.x*q.y - q.x*p.y.
inline int minor2(const Point& p, const Point& q, double* out) {
  double axby1, axby0, bxay1, bxay0;
  two_product(p.x, q.y, axby1, axby0);
  two_product(q.x, p.y, bxay1, bxay0);
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  two_diff(axby0, bxay0, lo[1], lo[0]);
  two_diff(axby1, bxay1, hi[1], hi[0]);
  return expansion_sum(2, lo, 2, hi, out);
}

inline double orient2d_exact(const Point& a, const Point& b, const Point& c) {
  double ab[4], bc[4], ca[4], t[8], det[12];
  const int ablen = minor2(a, b, ab);
  const int bclen = minor2(b, c, bc);
  const int calen = minor2(c, a, ca);
  const int tlen = expansion_sum(ablen, ab, bclen, bc, t);
  const int detlen = expansion_sum(tlen, t, calen, ca, det);
  return expansion_value(detlen, det);
}

inline double incircle_exact(const Point& pa, const Point& pb, const Point& pc,
                             const Point& pd) {
  double ab[4], bc[4], cd[4], da[4], ac[4], bd[4];
  const int ablen = minor2(pa, pb, ab);
  const int bclen = minor2(pb, pc, bc);
  const int cdlen = minor2(pc, pd, cd);
  const int dalen = minor2(pd, pa, da);
  const int aclen = minor2(pa, pc, ac);
  const int bdlen = minor2(pb, pd, bd);

  double t8[8];
  double cda[12], dab[12], abc[12], bcd[12];
  int tlen = expansion_sum(cdlen, cd, dalen, da, t8);
  const int cdalen = expansion_sum(tlen, t8, aclen, ac, cda);
  tlen = expansion_sum(dalen, da, ablen, ab, t8);
  const int dablen = expansion_sum(tlen, t8, bdlen, bd, dab);
  for (int i = 0; i < 4; ++i) {
    bd[i] = -bd[i];
    ac[i] = -ac[i];
  }
  tlen = expansion_sum(ablen, ab, bclen, bc, t8);
  const int abclen = expansion_sum(tlen, t8, aclen, ac, abc);
  tlen = expansion_sum(bclen, bc, cdlen, cd, t8);
  const int bcdlen = expansion_sum(tlen, t8, bdlen, bd, bcd);

  // lift(p) * M for each point, where lift(p) = p.x^2 + p.y^2.
  auto lifted = [](const Point& p, int mlen, const double* m, double* out) {
    double tx[48], txx[96], ty[48], tyy[96];
    int len = scale_expansion(mlen, m, p.x, tx);
    const int xxlen = scale_expansion(len, tx, p.x, txx);
    len = scale_expansion(mlen, m, p.y, ty);
    const int yylen = scale_expansion(len, ty, p.y, tyy);
    return expansion_sum(xxlen, txx, yylen, tyy, out);
  };

  double adet[192], bdet[192], cdet[192], ddet[192];
  const int alen = lifted(pa, bcdlen, bcd, adet);
  int blen = lifted(pb, cdalen, cda, bdet);
  const int clen = lifted(pc, dablen, dab, cdet);
  int dlen = lifted(pd, abclen, abc, ddet);
  for (int i = 0; i < blen; ++i) bdet[i] = -bdet[i];
  for (int i = 0; i < dlen; ++i) ddet[i] = -ddet[i];

  double abdet[384], cddet[384], deter[768];
  const int ablen2 = expansion_sum(alen, adet, blen, bdet, abdet);
  const int cdlen2 = expansion_sum(clen, cdet, dlen, ddet, cddet);
  const int detlen = expansion_sum(ablen2, abdet, cdlen2, cddet, deter);
  return expansion_value(detlen, deter);
}

}  // namespace exact

// Positive if a, b, c are counter-clockwise, negative if clockwise, zero if
// collinear.  The magnitude is twice the signed triangle area.
inline double orient2d(const Point& a, const Point& b, const Point& c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
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
  const double errbound = exact::kCcwErrA * detsum;
  if (det >= errbound || -det >= errbound) return det;
  return exact::orient2d_exact(a, b, c);
}

// Positive if d is strictly inside the circumcircle of the counter-clockwise
// triangle (a, b, c), negative outside, zero on it.
inline double incircle(const Point& pa, const Point& pb, const Point& pc,
                       const Point& pd) {
  const double adx = pa.x - pd.x, ady = pa.y - pd.y;
  const double bdx = pb.x - pd.x, bdy = pb.y - pd.y;
  const double cdx = pc.x - pd.x, cdy = pc.y - pd.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double errbound = exact::kIccErrA * permanent;
  if (det > errbound || -det > errbound) return det;
  return exact::incircle_exact(pa, pb, pc, pd);
}

}  // namespace cagemap
