#pragma once

// Leonard triple of q-Racah type on the spin-s representation: explicit
// matrices, eigenbases and duals, tridiagonal action coefficients, the f/g/h
// ladders, and the transition matrices between the three eigenbases.

#include <Eigen/Dense>

#include "leonard/params.hpp"
#include "leonard/qcalc.hpp"
#include "leonard/report.hpp"
#include "leonard/types.hpp"

namespace leonard {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct SpinRep {
  Mat qS3, qS3inv;  // q^{±s3}
  Mat Sp, Sm;       // raising / lowering
};

// U_q(sl2) spin-s generators as (2s+1)x(2s+1) matrices.
SpinRep spin_rep(int twoS, Cplx q);

// Tridiagonal coefficients of one operator acting on another's eigenbasis.
// sub[M] = A_{M+1,M} (coefficient toward M+1 in column M, M = 0..2s-1),
// diag[M] = A_{M,M}, sup[M] = A_{M,M+1} (column M+1, stored at M = 0..2s-1).
struct TriDiagCoeffs {
  std::vector<Cplx> sub, diag, sup;
};

// Plain pair coefficients for (basis, actor); the f/g/h ladder corrections
// for the non-adjacent pairs are applied by the caller.
TriDiagCoeffs tridiag_coeffs(const ParamSet& p, Label basis, Label actor);

struct Ladders {
  std::vector<Cplx> f, g, h;  // f0 = g0 = 1, h0 fixed by the closed-form product
  Cplx fgh0;                  // f0 h0^-1 g0^-1, closed form
  Cplx fgh0_sum;              // same quantity from the nu0-weighted sum route
};

Ladders ladder_scalars(const ParamSet& p);

struct TripleRealization {
  ParamSet params;
  Mat A, AStar, ADiam;     // ADiam from the spin-rep closed form
  double adiamCommResid;   // relative deviation of ADiam vs the q-commutator route
  Mat basisA, basisAStar, basisADiam;   // eigenvector columns, ladder-consistent scales
  Mat dualA, dualAStar, dualADiam;      // covector rows, <theta_M'|theta_M> = delta * xi, xi = 1
  Ladders ladders;

  const Mat& op(Label l) const {
    return l == Label::A ? A : (l == Label::AStar ? AStar : ADiam);
  }
  const Mat& basis(Label l) const {
    return l == Label::A ? basisA : (l == Label::AStar ? basisAStar : basisADiam);
  }
  const Mat& dual(Label l) const {
    return l == Label::A ? dualA : (l == Label::AStar ? dualAStar : dualADiam);
  }
  int dim() const { return params.dim(); }
};

// Build matrices, eigenbases, duals and ladders.  Validates the parameter
// gates first (throws DegenerateParams).
TripleRealization build_triple(const ParamSet& p);

// Residuals of the six ordered Askey-Wilson relations and the three
// Z3-symmetric relations, each normalized by operand scale.
VerifyReport aw_verify(const TripleRealization& t, double tol = 1e-10);

struct TransitionSet {
  Mat P_AAStar, P_AAStar_inv;      // |theta*_N> = sum_M P_MN |theta_M>
  Mat P_AStarADiam, P_AStarADiam_inv;  // g-weighted pair coefficients
  Mat P_ADiamA, P_ADiamA_inv;          // f,h-weighted pair coefficients
  Ladders ladders;
};

// Transition matrices from the closed-form k/nu0/R data (not from matrix
// inversion); inverses from the permuted-label k formula.
TransitionSet transition_set(const TripleRealization& t);

// Entry (M, Mp) of (P^{<>,.})^-1 — the kernel of the scalar-product formulas.
Cplx pdinv_entry(const ParamSet& p, int M, int Mp);

}  // namespace leonard
