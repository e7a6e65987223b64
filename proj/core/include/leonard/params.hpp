#pragma once

// Scalar data defining a triple instance: q, r0, the three leading spectral
// parameters b, b*, b<> (the trailing ones follow from r0^-2 = b c), and the
// spin s stored as 2s.

#include <string>
#include <vector>

#include "leonard/types.hpp"

namespace leonard {

struct ParamSet {
  Cplx q{};
  Cplx r0{};
  Cplx b{};       // leading spectral parameter of A
  Cplx bStar{};   // of A*
  Cplx bDiam{};   // of A<>
  int twoS = 1;   // 2s >= 1

  int dim() const { return twoS + 1; }

  Cplx bpar(Label l) const {
    switch (l) {
      case Label::A: return b;
      case Label::AStar: return bStar;
      default: return bDiam;
    }
  }
  // c-parameter from r0^-2 = b c.
  Cplx cpar(Label l) const { return Cplx(1) / (r0 * r0 * bpar(l)); }

  // theta^a_M = b^a q^(2M) + c^a q^(-2M)
  Cplx theta(Label l, int M) const;

  // zeta^2 = c<> r0 q^(-2s), principal branch.  The inverse branch
  // zeta^-2 = b<> r0 q^(2s) holds identically since r0^-2 = b<> c<>.
  Cplx zeta() const;

  // Structure constant omega^{a,b,c} of the Askey-Wilson relations.
  Cplx omega(Label a, Label b, Label c) const;
  // rho, eta, eta* for the fixed triple (A, A*, A<>).
  Cplx rho() const;
  Cplx eta() const;
  Cplx etaStar() const;

  // Leonard-triple gates: q not 0/±1 nor a root of unity at orders <= 4s,
  // spectra multiplicity-free, irreducibility denominators bounded away from
  // zero.  Throws DegenerateParams naming the violated condition.
  void validate(double rtol = 1e-8) const;

  // Canonical "key = value" text for hashing/reports.
  std::string canonical() const;
};

// Plain-text config: lines "key = value" with keys q, r0, b, bstar, bdiam, s.
// Complex values as "re+imi" (e.g. "1.5+0.3i"); s as "1/2", "1.5" or "3".
// Throws ConfigError with line diagnostics.
ParamSet parse_params(const std::string& text);
ParamSet load_params(const std::string& path);

// Complex literal parser/printer shared by config and reports.
Cplx parse_complex(const std::string& s);
std::string format_complex(Cplx z);

}  // namespace leonard
