#include "leonard/qcalc.hpp"

#include "leonard/params.hpp"

namespace leonard {

Cplx qnum(int n, Cplx q) {
  if (q == Cplx(0) || q == Cplx(1) || q == Cplx(-1))
    throw DomainError("qnum: q in {0, 1, -1}");
  return (std::pow(q, n) - std::pow(q, -n)) / (q - Cplx(1) / q);
}

Cplx qpoch(std::initializer_list<Cplx> bases, Cplx q2, int n) {
  Cplx r(1);
  for (Cplx a : bases) r *= qpoch(a, q2, n);
  return r;
}

Cplx racah_eval(const ParamSet& p, Label a, Label c, int M, int N) {
  if (succ(succ(a)) != c)
    throw DomainError("racah_eval: (a,c) must be the outer pair of a cyclic triple");
  Label b = remaining(a, c);
  // the terminating sum can cancel to many orders below its leading terms;
  // extended precision keeps small polynomial values at full double accuracy
  auto up = [](Cplx z) { return CplxL(z.real(), z.imag()); };
  const CplxL q = up(p.q), r0 = up(p.r0);
  const CplxL pa = up(p.bpar(a)), ca = up(p.cpar(a));
  const CplxL pb = up(p.bpar(b)), cb = up(p.cpar(b));
  const CplxL pc = up(p.bpar(c)), cc = up(p.cpar(c));
  const int s2 = p.twoS;
  const CplxL q2 = q * q;
  std::array<CplxL, 3> num = {pa / ca * std::pow(q, 2 * M), std::pow(q, -2 * N),
                              pb / cb * std::pow(q, 2 * N)};
  std::array<CplxL, 3> den = {-pa * cc / cb * r0 * q,
                              -pb * pc / ca * r0 * std::pow(q, 2 * s2 + 1),
                              std::pow(q, -2 * s2)};
  CplxL v = phi43_terminating(num, den, q2, q2, M);
  return Cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

Cplx k_coeff(const ParamSet& p, Label a, Label b, Label c, int N) {
  const Cplx q = p.q, r0 = p.r0;
  const Cplx pa = p.bpar(a), ca = p.cpar(a);
  const Cplx pb = p.bpar(b), cb = p.cpar(b);
  const Cplx pc = p.bpar(c), cc = p.cpar(c);
  const int s2 = p.twoS;
  const Cplx q2 = q * q;
  Cplx num = qpoch({-pb * pc / ca * r0 * std::pow(q, 2 * s2 + 1),
                    -pa * cc / cb * r0 * q, pb / cb, std::pow(q, -2 * s2)},
                   q2, N);
  Cplx den = qpoch({q2, -pb * pc / pa * r0 * q,
                    -ca * cc / cb * r0 * std::pow(q, 1 - 2 * s2),
                    pb / cb * std::pow(q, 2 * s2 + 2)},
                   q2, N);
  if (den == Cplx(0)) throw DegenerateParams("k_coeff: denominator Pochhammer vanishes");
  Cplx tail = (Cplx(1) - pb / cb * std::pow(q, 4 * N)) /
              (std::pow(pa / ca, N) * (Cplx(1) - pb / cb));
  return num / den * tail;
}

Cplx nu0_coeff(const ParamSet& p, Label a, Label b, Label c) {
  const Cplx q = p.q, r0 = p.r0;
  const Cplx pa = p.bpar(a), ca = p.cpar(a);
  const Cplx pb = p.bpar(b), cb = p.cpar(b);
  const Cplx pc = p.bpar(c), cc = p.cpar(c);
  const int s2 = p.twoS;
  const Cplx q2 = q * q;
  Cplx num = qpoch({pa / ca * q2, pb / cb * q2}, q2, s2);
  Cplx den = std::pow(-pb * pc / ca * r0 * std::pow(q, 2 * s2 + 1), s2) *
             qpoch({-pa * cc / pb * r0 * std::pow(q, 1 - 2 * s2),
                    -ca * cc / cb * r0 * std::pow(q, 1 - 2 * s2)},
                   q2, s2);
  if (den == Cplx(0)) throw DegenerateParams("nu0_coeff: denominator vanishes");
  return num / den;
}

}  // namespace leonard
