#pragma once

// q-calculus primitives: b(x), q-numbers, q-shifted factorials, the
// terminating 4phi3 sum and q-Racah polynomial evaluation with its
// normalization coefficients.

#include <array>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "leonard/types.hpp"

namespace leonard {

struct ParamSet;  // params.hpp

// b(x) = x - 1/x.  Throws DomainError on x = 0.
template <typename C>
C bfun(C x) {
  if (x == C(0)) throw DomainError("bfun: x = 0");
  return x - C(1) / x;
}

// [n]_q = (q^n - q^-n)/(q - q^-1).  q must not be 0, 1 or -1.
Cplx qnum(int n, Cplx q);

// q^(num/2) on the principal sqrt branch; exact for even num.
template <typename C>
C qpow_half(C q, int num) {
  if (num % 2 == 0) return std::pow(q, num / 2);
  return std::pow(std::sqrt(q), num);
}

// (a; q2)_n = prod_{k=0}^{n-1} (1 - a q2^k).  n >= 0; empty product is 1.
template <typename C>
C qpoch(C a, C q2, int n) {
  C r(1);
  C p(1);
  for (int k = 0; k < n; ++k) {
    r *= C(1) - a * p;
    p *= q2;
  }
  return r;
}

// Multi-base variant: (a1, a2, ..., ak; q2)_n.
Cplx qpoch(std::initializer_list<Cplx> bases, Cplx q2, int n);

// Terminating 4phi3 with numerator parameters {q2^(-n), num[0], num[1], num[2]}
// and denominator parameters {den[0], den[1], den[2]}, base q2, argument z.
// The terminating numerator is implied by the integer n, never reconstructed
// from a float.  Summed by multiplicative term recursion.  Throws
// SingularSeries when a denominator Pochhammer factor vanishes before the
// series terminates.
template <typename C>
C phi43_terminating(const std::array<C, 3>& num, const std::array<C, 3>& den,
                    C q2, C z, int n) {
  C total(1);
  C term(1);
  C q2k(1);           // q2^k
  C q2kn = C(1) / std::pow(q2, n);  // q2^(k-n)
  for (int k = 0; k < n; ++k) {
    C fac = (C(1) - q2kn) * z;
    for (const C& a : num) fac *= C(1) - a * q2k;
    C dd = C(1) - q2 * q2k;  // (q2; q2) factor at this order
    for (const C& d : den) dd *= C(1) - d * q2k;
    if (dd == C(0) || std::abs(dd) < 1e-300)
      throw SingularSeries("phi43: denominator factor vanishes at k <= n");
    term *= fac / dd;
    total += term;
    q2k *= q2;
    q2kn *= q2;
  }
  return total;
}

// R^{a,c}_M(theta^b_N): q-Racah polynomial entering the transition matrices.
// The ordered pair (a, c) must skip one label so that (a, b, c) is cyclic.
// Preconditions on the parameter set (spectra non-degenerate etc.) are the
// triple module's gate; this evaluates the series as given.
Cplx racah_eval(const ParamSet& p, Label a, Label c, int M, int N);

// Transition normalizations k^{a,b,c}_N and nu0^{a,b,c}.
Cplx k_coeff(const ParamSet& p, Label a, Label b, Label c, int N);
Cplx nu0_coeff(const ParamSet& p, Label a, Label b, Label c);

}  // namespace leonard
