#pragma once

// Off-shell Bethe states as explicit vectors (beta = 0 string formula),
// the closed-form normalized scalar products, the direct covector oracle,
// the q-Racah decompositions and the inhomogeneous-from-homogeneous root map.

#include <vector>

#include "leonard/bethe.hpp"
#include "leonard/triple.hpp"

namespace leonard {

struct OffShellState {
  int epsilon = -1;
  std::vector<Cplx> variables;
  int m0 = 0;      // recorded for provenance only; cancels at beta = 0
  Vec vector;
  Cplx prefactor;  // the G factor folded into `vector`
};

// Scalar prefactor G^eps_M(ubar) of the string formula.
Cplx string_prefactor(const ParamSet& p, int epsilon, const std::vector<Cplx>& u);

// G^eps * prod_i (U_i I - r0/(q+q^-1) A<>); factors commute.
Mat string_b_matrix(const TripleRealization& t, int epsilon, const std::vector<Cplx>& u);

// String matrix applied to the reference state |theta_0> (eps = -) or
// |theta*_0> (eps = +).
OffShellState off_shell_state(const TripleRealization& t, int epsilon,
                              const std::vector<Cplx>& u);

// Expansion coefficients of the off-shell state over the A-eigenbasis,
// computed from the transition data (cross-check route).
Vec off_shell_expansion(const TripleRealization& t, int epsilon, const std::vector<Cplx>& u);

struct ScalarProductValue {
  int M = 0;
  int epsilon = -1;
  Cplx value;
  double termScale = 0.0;  // magnitude scale of the defining sum/contraction
};

// <theta_M | Psi^eps(ubar)> / <theta_M | theta_M> from the closed-form sum.
ScalarProductValue scalar_theorem(const TripleRealization& t, int epsilon, int M,
                                  const std::vector<Cplx>& u);
// Same quantity by direct covector contraction (independent oracle).
ScalarProductValue scalar_direct(const TripleRealization& t, int epsilon, int M,
                                 const std::vector<Cplx>& u);

// Normalization factor turning the on-shell state into the eigenvector.
Cplx norm_factors(const TripleRealization& t, const BetheRootSet& roots);

// R^{.,<>}_M(theta*_N) from the homogeneous and inhomogeneous decompositions.
struct RacahDecomposition {
  Cplx homogeneous;
  Cplx inhomogeneous;
};
RacahDecomposition racah_decompositions(const TripleRealization& t, int M, int N,
                                        const BetheRootSet& homRoots,
                                        const BetheRootSet& inhomRoots);

// Inhomogeneous symmetric roots for level N from the homogeneous ones:
// Lagrange interpolation of the monic root polynomial through the
// r0 theta<>_{M'}/(q+q^-1) nodes, then companion-matrix roots.
BetheRootSet inhom_from_hom(const TripleRealization& t, int N, const BetheRootSet& homRoots);

}  // namespace leonard
