#pragma once

// Bethe-equation assembly and the numerical root solver, in the symmetric
// variables U = (q u^2 + q^-1 u^-2)/(q + q^-1).

#include <optional>
#include <vector>

#include "leonard/params.hpp"
#include "leonard/types.hpp"

namespace leonard {

enum class BetheKind { Homogeneous, Inhomogeneous };

struct BetheRootSet {
  BetheKind kind = BetheKind::Homogeneous;
  int epsilon = +1;
  int level = 0;                  // target eigenvalue index
  std::vector<Cplx> symRoots;     // U_j
  std::vector<Cplx> uRoots;       // representative u_j per U_j (|u| >= 1 branch)
  std::vector<double> residuals;  // scale-normalized |E_i|
};

// Eigenvalue functions of the reference state: (Lambda_1^eps(u), Lambda_2^eps(u)).
std::pair<Cplx, Cplx> lambda12(const ParamSet& p, int epsilon, Cplx u);

// Exchange-relation coefficient pair entering the Bethe functions.
Cplx coeff_f(Cplx q, Cplx u, Cplx v);
Cplx coeff_h(Cplx q, Cplx u, Cplx v);

// Homogeneous Bethe function E^M_eps(u_i, ubar_i); also returns the sum of
// term magnitudes for scale-aware residuals.
Cplx e_hom(const ParamSet& p, int epsilon, int i, const std::vector<Cplx>& u,
           double* scale = nullptr);
// Inhomogeneous Bethe function E_eps(u_i, ubar_i); u must have exactly 2s entries.
Cplx e_inhom(const ParamSet& p, int epsilon, int i, const std::vector<Cplx>& u,
             double* scale = nullptr);

// Symmetric variable and its representative: U(u) and the |u| >= 1 branch of
// the inverse (ties broken toward positive real part).
Cplx sym_of_u(const ParamSet& p, Cplx u);
Cplx u_of_sym(const ParamSet& p, Cplx U, bool otherBranch = false);

// Eigenvalue from an inhomogeneous root set (throws KindMismatch otherwise).
Cplx eigenvalue_from_roots(const ParamSet& p, const BetheRootSet& roots);

struct SolverOptions {
  int budgetPerUnknownSq = 200;  // seeds = budget * n^2
  unsigned seed = 1;
  double newtonTol = 1e-13;      // scale-normalized residual target
  double admissTol = 1e-8;
  double dedupTol = 1e-7;
  int maxNewtonIters = 80;
};

// Unique admissible homogeneous root set at the given level (empty at level 0).
// Throws SolverFailure / AmbiguousSolution.
BetheRootSet solve_hom(const ParamSet& p, int epsilon, int level,
                       const SolverOptions& opt = {});

// All admissible inhomogeneous solutions found within the budget, each
// labeled with the eigenvalue level its root sum selects.
std::vector<BetheRootSet> solve_inhom_all(const ParamSet& p, int epsilon,
                                          const SolverOptions& opt = {});
// The solution whose eigenvalue matches the target level (NoMatchingLevel if
// none does).
BetheRootSet solve_inhom(const ParamSet& p, int epsilon, int targetLevel,
                         const SolverOptions& opt = {});

// Appendix-style exchange coefficients, parameterized by the gauge scalars.
struct ExchangeCoeffs {
  Cplx f, h, g, w, k, n, qc, r, sc, x, y, z, gamma_eps;
};
ExchangeCoeffs exchange_coeffs(Cplx alpha, Cplx beta, int epsilon, Cplx q, Cplx u,
                               Cplx v, int m);

}  // namespace leonard
