#pragma once

// Independent oracle implementations used by the test suites only.  These
// deliberately re-type the target formulas in a different style (long-double
// arithmetic, direct summation instead of term recursion) so that agreement
// is a genuine two-route check.

#include <complex>
#include <vector>

#include "leonard/params.hpp"

namespace oracles {

using Cld = std::complex<long double>;
using leonard::Cplx;
using leonard::ParamSet;

inline Cld up(Cplx z) { return Cld(z.real(), z.imag()); }
inline Cplx down(Cld z) {
  return Cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

// 4phi3 by direct term-by-term summation: every term built from scratch as a
// ratio of full Pochhammer products in long double.
inline Cplx phi43_direct(const std::array<Cplx, 3>& num, const std::array<Cplx, 3>& den,
                         Cplx q2_, Cplx z_, int n) {
  Cld q2 = up(q2_), z = up(z_);
  Cld total = 0;
  for (int k = 0; k <= n; ++k) {
    Cld t = 1;
    for (int j = 0; j < k; ++j) {
      Cld q2j = std::pow(q2, j);
      t *= (Cld(1) - std::pow(q2, j - n)) * z;
      for (auto a : num) t *= Cld(1) - up(a) * q2j;
      t /= Cld(1) - std::pow(q2, j + 1);
      for (auto d : den) t /= Cld(1) - up(d) * q2j;
    }
    total += t;
  }
  return down(total);
}

inline Cld bl(Cld x) { return x - Cld(1) / x; }

// Lambda functions re-typed in long double, factors grouped differently.
inline std::pair<Cplx, Cplx> lambda12_ld(const ParamSet& p, int eps, Cplx u_) {
  Cld q = up(p.q), u = up(u_);
  int s2 = p.twoS;
  Cld z = std::sqrt(up(p.cpar(leonard::Label::ADiam)) * up(p.r0) * std::pow(q, -s2));
  Cld bb = up(p.b), bs = up(p.bStar);
  Cld cb = up(p.cpar(leonard::Label::A)), cs = up(p.cpar(leonard::Label::AStar));
  Cld qs = std::pow(q, s2 + 1);
  Cld l1 = std::pow(q, -s2 - 1) * std::pow(u, -eps);
  l1 *= (qs * u / z - z / u) * (qs * u * z - Cld(1) / (z * u));
  l1 *= u * cs * std::pow(q, -s2) + bb * std::pow(q, s2) / u;
  l1 *= (eps > 0) ? (u + bs / (bb * u)) : (u * cb / cs + Cld(1) / u);
  Cld l2 = (u * u - Cld(1) / (u * u)) * std::pow(q, -s2 - 1) /
           (std::pow(u, eps) * (q * u * u - Cld(1) / (q * u * u)));
  l2 *= (std::pow(q, s2 - 1) * z / u - u / z) * (std::pow(q, s2 - 1) / (z * u) - u * z);
  l2 *= q * q * u * bb * std::pow(q, s2) + cs * std::pow(q, -s2) / u;
  l2 *= (eps > 0) ? (q * q * u * bs / bb + Cld(1) / u) : (q * q * u + cb / (cs * u));
  return {down(l1), down(l2)};
}

// Exchange coefficients re-typed directly from their displays.
struct ExchangeOracle {
  Cplx f, h, g, w, k, n, qc, r, sc, x, y, z, gamma_eps;
};

inline ExchangeOracle exchange_oracle(Cplx alpha_, Cplx beta_, int eps, Cplx q_, Cplx u_,
                                      Cplx v_, int m) {
  Cld al = up(alpha_), be = up(beta_), q = up(q_), u = up(u_), v = up(v_);
  auto gam = [&](Cld x, int mm) {
    Cld hp = (eps > 0) ? be : al;
    Cld hm = (eps > 0) ? al : be;
    return hp * std::pow(q, -mm) * x - hm * std::pow(q, mm) / x;
  };
  Cld bq = bl(q);
  Cld g1 = gam(Cld(1), m + 1);
  ExchangeOracle o;
  o.f = down(bl(q * v / u) * bl(u * v) / (bl(v / u) * bl(q * u * v)));
  o.h = down(bl(q * q * u * v) * bl(q * u / v) / (bl(q * u * v) * bl(u / v)));
  o.g = down(gam(u / v, m + 1) / g1 * bq * bl(v * v) / (bl(q * v * v) * bl(u / v)));
  o.w = down(-gam(u * v, m) / g1 * bq / bl(q * u * v));
  o.k = down(gam(v / u, m + 1) / g1 * bq * bl(q * q * u * u) / (bl(q * u * u) * bl(v / u)));
  o.n = down(gam(Cld(1) / (u * v), m + 2) / g1 * bq * bl(v * v) * bl(q * q * u * u) /
             (bl(q * u * u) * bl(q * v * v) * bl(q * u * v)));
  o.qc = down(gam(u / v, m) * bq * bl(u * v) / (g1 * bl(u / v) * bl(q * u * v)));
  o.r = down(bq * bl(u * u) * gam(Cld(1), m) * gam(v / u, m + 1) /
             (g1 * g1 * bl(q * u * u) * bl(v / u)));
  o.sc = down(bq * bq * bl(u * u) * gam(Cld(1) / (v * v), m + 1) * gam(v / u, m + 1) /
              (g1 * g1 * bl(q * u * u) * bl(q * v * v) * bl(v / u)));
  o.x = down(bq * bl(u * u) * bl(q * u / v) * gam(Cld(1) / (u * v), m + 1) /
             (g1 * bl(q * u * u) * bl(u / v) * bl(q * u * v)));
  o.y = down(-bq * bq * gam(Cld(1) / (v * v), m + 1) * gam(u * v, m) /
             (g1 * g1 * bl(q * v * v) * bl(q * u * v)));
  o.z = down(-bq * gam(Cld(1), m) * gam(u * v, m) / (g1 * g1 * bl(q * u * v)));
  o.gamma_eps = down(gam(u, m));
  return o;
}

// Y_eps re-typed in long double.
inline Cplx y_eps_ld(const ParamSet& p, int eps, Cplx u_, const std::vector<Cplx>& ubar) {
  Cld q = up(p.q), u = up(u_);
  int s2 = p.twoS;
  auto [l1_, l2_] = lambda12_ld(p, eps, u_);
  Cld l1 = up(l1_), l2 = up(l2_);
  Cld p1 = 1, p2 = 1;
  for (Cplx w_ : ubar) {
    Cld w = up(w_);
    p1 *= bl(u / (q * w)) * bl(u * w);
    p2 *= bl(q * u / w) * bl(q * q * u * w);
  }
  Cld out = std::pow(u, 2 * eps + 1) * l1 / (bl(u * u) * bl(q * u * u)) * p1 +
            std::pow(q, -eps - 1) / u * l2 / (bl(u * u) * bl(q * q * u * u)) * p2;
  if (eps > 0) {
    Cld z = std::sqrt(up(p.cpar(leonard::Label::ADiam)) * up(p.r0) * std::pow(q, -s2));
    Cld zp = 1;
    for (int j = 0; j <= s2; ++j) {
      Cld x = std::pow(std::sqrt(q), 1 + 2 * j - s2);
      zp *= bl(x * u * z) * bl(x * u / z);
    }
    out -= std::pow(q, -1 - 2 * s2) * up(p.cpar(leonard::Label::AStar)) * zp;
  }
  return down(out);
}

}  // namespace oracles
