#pragma once

// Homogeneous linear system satisfied by the normalized scalar products at
// M'' = 2s, its rank/kernel diagnostics, and the determinant route to
// q-Racah polynomials (closed forms at s = 1/2, kernel route otherwise).

#include <vector>

#include "leonard/scalprod.hpp"
#include "leonard/triple.hpp"

namespace leonard {

// Y_eps(u | ubar) of the off-shell action; ubar is the spectator set.
Cplx y_eps(const ParamSet& p, int epsilon, Cplx u, const std::vector<Cplx>& ubar);
// g(u, ubar) = prod 1/(b(u/u_i) b(q u u_i)).
Cplx g_prod(const ParamSet& p, Cplx u, const std::vector<Cplx>& ubar);

struct BSSystem {
  int epsilon = -1;
  int M = 0;
  std::vector<Cplx> variables;  // 2s+1 distinct points
  Mat L;                        // action coefficients
  Mat Msys;                     // L - theta_M I
};

BSSystem build_system(const TripleRealization& t, int epsilon, int M,
                      const std::vector<Cplx>& vars);

// Contracts the system rows with the theorem-route scalar products and
// reports the normalized residual plus singular-value diagnostics.
VerifyReport verify_solution(const TripleRealization& t, const BSSystem& sys,
                             double tol = 1e-8);

struct KernelVector {
  Vec v;            // unit-norm right-kernel direction
  double svGap;     // smallest / second-smallest singular value
};

// Smallest right singular vector; throws RankDeficiencyUnexpected when the
// rank is not 2s (gap above `gapTol`).
KernelVector nullspace_route(const BSSystem& sys, double gapTol = 1e-6);

// s = 1/2 closed-form reduced system: the two surviving entries of the
// row-reduced matrix and the prefactor psi, with the free scalar C = 1.
struct DetRouteHalf {
  Cplx m11, m12;
  Cplx psi;
};
DetRouteHalf det_route_s_half(const TripleRealization& t, int epsilon, int M,
                              const std::vector<Cplx>& vars);

// R^{.,<>}_M(theta*_N) from the determinant/kernel route.  The first 2s
// entries of `vars` must be the inhomogeneous roots at level N (eps = -),
// the last one an arbitrary distinct point.
Cplx racah_via_det(const TripleRealization& t, int M, int N, const std::vector<Cplx>& vars);

}  // namespace leonard
