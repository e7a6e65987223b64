#include "leonard/scalprod.hpp"

#include <cmath>

namespace leonard {

Cplx string_prefactor(const ParamSet& p, int epsilon, const std::vector<Cplx>& u) {
  const Cplx q = p.q;
  const int M = static_cast<int>(u.size());
  Cplx base = static_cast<double>(epsilon) * (q + Cplx(1) / q) * std::pow(q, -epsilon * (M + 1));
  base *= (epsilon < 0) ? p.b : p.cpar(Label::AStar);
  Cplx pr = std::pow(base, M);
  for (Cplx ui : u) {
    if (ui == Cplx(0)) throw DomainError("string_prefactor: u = 0");
    pr *= bfun(ui * ui) * std::pow(ui, -epsilon);
  }
  return pr;
}

Mat string_b_matrix(const TripleRealization& t, int epsilon, const std::vector<Cplx>& u) {
  const ParamSet& p = t.params;
  const int n = p.dim();
  Mat B = Mat::Identity(n, n);
  const Cplx c = p.r0 / (p.q + Cplx(1) / p.q);
  for (Cplx ui : u) B = B * (sym_of_u(p, ui) * Mat::Identity(n, n) - c * t.ADiam);
  return string_prefactor(p, epsilon, u) * B;
}

OffShellState off_shell_state(const TripleRealization& t, int epsilon,
                              const std::vector<Cplx>& u) {
  OffShellState st;
  st.epsilon = epsilon;
  st.variables = u;
  st.prefactor = string_prefactor(t.params, epsilon, u);
  const Vec& ref = (epsilon < 0) ? t.basisA.col(0) : t.basisAStar.col(0);
  st.vector = string_b_matrix(t, epsilon, u) * ref;
  return st;
}

Vec off_shell_expansion(const TripleRealization& t, int epsilon, const std::vector<Cplx>& u) {
  const ParamSet& p = t.params;
  const int n = p.dim();
  const Cplx c = p.r0 / (p.q + Cplx(1) / p.q);
  Vec coeffs = Vec::Zero(n);
  for (int N = 0; N < n; ++N) {
    Cplx tot = 0;
    for (int Mp = 0; Mp < n; ++Mp) {
      Cplx pr = 1;
      for (Cplx ui : u) pr *= sym_of_u(p, ui) - c * p.theta(Label::ADiam, Mp);
      Cplx w = pdinv_entry(p, N, Mp) * pr;
      if (epsilon > 0) w /= t.ladders.h[static_cast<size_t>(Mp)];
      tot += w;
    }
    Cplx fac = t.ladders.f[static_cast<size_t>(N)] / t.ladders.f[0];
    if (epsilon > 0)
      fac = t.ladders.f[static_cast<size_t>(N)] /
            (nu0_coeff(p, Label::AStar, Label::ADiam, Label::A) * t.ladders.g[0]);
    coeffs(N) = string_prefactor(p, epsilon, u) * fac * tot;
  }
  return coeffs;
}

ScalarProductValue scalar_theorem(const TripleRealization& t, int epsilon, int M,
                                  const std::vector<Cplx>& u) {
  const ParamSet& p = t.params;
  if (M < 0 || M > p.twoS) throw DomainError("scalar_theorem: M out of range");
  const int n = p.dim();
  const Cplx c = p.r0 / (p.q + Cplx(1) / p.q);
  Cplx tot = 0;
  double scale = 0;
  for (int Mp = 0; Mp < n; ++Mp) {
    Cplx pr = 1;
    for (Cplx ui : u) pr *= sym_of_u(p, ui) - c * p.theta(Label::ADiam, Mp);
    Cplx w = pdinv_entry(p, M, Mp) * pr;
    if (epsilon > 0) w /= t.ladders.h[static_cast<size_t>(Mp)];
    tot += w;
    scale += std::abs(w);
  }
  Cplx fac = string_prefactor(p, epsilon, u);
  fac *= (epsilon < 0)
             ? t.ladders.f[static_cast<size_t>(M)] / t.ladders.f[0]
             : t.ladders.f[static_cast<size_t>(M)] /
                   (t.ladders.g[0] * nu0_coeff(p, Label::AStar, Label::ADiam, Label::A));
  ScalarProductValue v;
  v.M = M;
  v.epsilon = epsilon;
  v.value = fac * tot;
  v.termScale = std::abs(fac) * scale;
  return v;
}

ScalarProductValue scalar_direct(const TripleRealization& t, int epsilon, int M,
                                 const std::vector<Cplx>& u) {
  if (M < 0 || M > t.params.twoS) throw DomainError("scalar_direct: M out of range");
  OffShellState st = off_shell_state(t, epsilon, u);
  ScalarProductValue v;
  v.M = M;
  v.epsilon = epsilon;
  // xi_M = 1 gauge: covector row M applied to the state
  v.value = (t.dualA.row(M) * st.vector)(0, 0);
  double sc = 0;
  for (int j = 0; j < st.vector.size(); ++j)
    sc += std::abs(t.dualA(M, j)) * std::abs(st.vector(j));
  v.termScale = sc;
  return v;
}

Cplx norm_factors(const TripleRealization& t, const BetheRootSet& roots) {
  const ParamSet& p = t.params;
  const Cplx q = p.q;
  if (roots.kind == BetheKind::Homogeneous) {
    Cplx r = 1;
    if (roots.epsilon < 0) {
      // eigenvectors of A from Psi^-: uses the A*-on-A-basis lower coefficients
      TriDiagCoeffs cs = tridiag_coeffs(p, Label::A, Label::AStar);
      for (size_t k = 1; k <= roots.uRoots.size(); ++k) {
        Cplx uk = roots.uRoots[k - 1];
        r /= q * uk * bfun(uk * uk) * cs.sub[k - 1];
      }
    } else {
      TriDiagCoeffs cs = tridiag_coeffs(p, Label::AStar, Label::A);
      for (size_t k = 1; k <= roots.uRoots.size(); ++k) {
        Cplx uk = roots.uRoots[k - 1];
        r /= -(Cplx(1) / q) * (Cplx(1) / uk) * bfun(uk * uk) * cs.sub[k - 1];
      }
    }
    return r;
  }
  // inhomogeneous: 2s-string normalization times a transition entry
  if (static_cast<int>(roots.uRoots.size()) != p.twoS)
    throw KindMismatch("norm_factors: inhomogeneous set must have 2s roots");
  BetheRootSet as_hom = roots;
  as_hom.kind = BetheKind::Homogeneous;
  if (roots.epsilon > 0) {
    // |theta_M> = N*_{2s}(u) (P^{.,*}^-1)_{2s,M} Psi_+^{2s}
    as_hom.epsilon = +1;
    Cplx base = norm_factors(t, as_hom);
    Cplx pinv = k_coeff(p, Label::AStar, Label::A, Label::ADiam, roots.level) *
                racah_eval(p, Label::A, Label::ADiam, roots.level, p.twoS) /
                nu0_coeff(p, Label::A, Label::AStar, Label::ADiam);
    return base * pinv;
  }
  as_hom.epsilon = -1;
  Cplx base = norm_factors(t, as_hom);
  Cplx pentry = k_coeff(p, Label::A, Label::AStar, Label::ADiam, roots.level) *
                racah_eval(p, Label::A, Label::ADiam, p.twoS, roots.level);
  return base * pentry;
}

RacahDecomposition racah_decompositions(const TripleRealization& t, int M, int N,
                                        const BetheRootSet& homRoots,
                                        const BetheRootSet& inhomRoots) {
  if (homRoots.kind != BetheKind::Homogeneous || inhomRoots.kind != BetheKind::Inhomogeneous)
    throw KindMismatch("racah_decompositions: need one homogeneous and one inhomogeneous set");
  if (homRoots.level != N || inhomRoots.level != N)
    throw KindMismatch("racah_decompositions: root sets are not at level " + std::to_string(N));
  const ParamSet& p = t.params;
  const int n = p.dim();
  const Cplx c = p.r0 / (p.q + Cplx(1) / p.q);
  auto ratio = [&](const std::vector<Cplx>& roots, bool weightH) {
    Cplx num = 0, den = 0;
    for (int Mp = 0; Mp < n; ++Mp) {
      Cplx pr = 1;
      for (Cplx U : roots) pr *= U - c * p.theta(Label::ADiam, Mp);
      Cplx w = pr * k_coeff(p, Label::A, Label::ADiam, Label::AStar, Mp);
      if (weightH) w /= t.ladders.h[static_cast<size_t>(Mp)];
      num += w * racah_eval(p, Label::ADiam, Label::AStar, Mp, M);
      den += w;
    }
    if (den == Cplx(0)) throw DegenerateParams("racah_decompositions: vanishing denominator sum");
    return num / den;
  };
  Cplx fr = t.ladders.f[static_cast<size_t>(M)] / t.ladders.f[0];
  RacahDecomposition out;
  out.homogeneous = fr * ratio(homRoots.symRoots, true);
  out.inhomogeneous = fr * ratio(inhomRoots.symRoots, false);
  return out;
}

BetheRootSet inhom_from_hom(const TripleRealization& t, int N, const BetheRootSet& homRoots) {
  const ParamSet& p = t.params;
  const int n = p.dim();
  const int s2 = p.twoS;
  const Cplx c = p.r0 / (p.q + Cplx(1) / p.q);
  std::vector<Cplx> nodes(static_cast<size_t>(n));
  for (int Mp = 0; Mp < n; ++Mp) nodes[static_cast<size_t>(Mp)] = c * p.theta(Label::ADiam, Mp);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(nodes[i] - nodes[j]) <
          1e-12 * std::max(std::abs(nodes[i]), std::abs(nodes[j])))
        throw InterpolationDegenerate("inhom_from_hom: interpolation nodes collide");
  // node values (up to one overall scale): prod_j (U^h_j - x_Mp) / h_Mp
  std::vector<Cplx> w(static_cast<size_t>(n));
  for (int Mp = 0; Mp < n; ++Mp) {
    Cplx pr = 1;
    for (Cplx U : homRoots.symRoots) pr *= U - nodes[static_cast<size_t>(Mp)];
    w[static_cast<size_t>(Mp)] = pr / t.ladders.h[static_cast<size_t>(Mp)];
  }
  // leading coefficient of the Lagrange interpolant; monicity fixes the scale
  Cplx lead = 0;
  for (int Mp = 0; Mp < n; ++Mp) {
    Cplx d = 1;
    for (int j = 0; j < n; ++j)
      if (j != Mp) d *= nodes[static_cast<size_t>(Mp)] - nodes[static_cast<size_t>(j)];
    lead += w[static_cast<size_t>(Mp)] / d;
  }
  if (std::abs(lead) < 1e-300)
    throw InterpolationDegenerate("inhom_from_hom: interpolant degree collapses");
  const Cplx lam = Cplx(1) / lead;
  // accumulate monic-polynomial coefficients (degree 2s), low order first
  std::vector<Cplx> coeff(static_cast<size_t>(n), Cplx(0));
  for (int Mp = 0; Mp < n; ++Mp) {
    std::vector<Cplx> basis = {Cplx(1)};
    Cplx d = 1;
    for (int j = 0; j < n; ++j) {
      if (j == Mp) continue;
      std::vector<Cplx> nxt(basis.size() + 1, Cplx(0));
      for (size_t k = 0; k < basis.size(); ++k) {
        nxt[k + 1] += basis[k];
        nxt[k] -= basis[k] * nodes[static_cast<size_t>(j)];
      }
      basis = std::move(nxt);
      d *= nodes[static_cast<size_t>(Mp)] - nodes[static_cast<size_t>(j)];
    }
    Cplx fac = lam * w[static_cast<size_t>(Mp)] / d;
    for (size_t k = 0; k < basis.size(); ++k) coeff[k] += fac * basis[k];
  }
  // roots of the monic degree-2s polynomial via the companion matrix
  Mat comp = Mat::Zero(s2, s2);
  for (int i = 1; i < s2; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < s2; ++i) comp(i, s2 - 1) = -coeff[static_cast<size_t>(i)] / coeff[static_cast<size_t>(s2)];
  Eigen::ComplexEigenSolver<Mat> es(comp);
  if (es.info() != Eigen::Success)
    throw RootExtractionFailure("inhom_from_hom: companion eigensolve failed");
  std::vector<Cplx> roots(static_cast<size_t>(s2));
  for (int i = 0; i < s2; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
  // polynomial residual at the extracted roots; wide spectral lattices (large
  // q) can leave the double companion solve short, retry in extended precision
  auto poly_resid = [&](const std::vector<Cplx>& rts) {
    double worst = 0;
    for (Cplx r : rts) {
      CplxL v = 0, xp = 1, sc = 0;
      CplxL x(r.real(), r.imag());
      for (int k = 0; k <= s2; ++k) {
        CplxL term = CplxL(coeff[static_cast<size_t>(k)].real(),
                           coeff[static_cast<size_t>(k)].imag()) * xp;
        v += term;
        sc += std::abs(term);
        xp *= x;
      }
      worst = std::max(worst, static_cast<double>(std::abs(v) / std::max(std::abs(sc), (long double)1e-300)));
    }
    return worst;
  };
  if (poly_resid(roots) > 1e-6) {
    using MatL = Eigen::Matrix<CplxL, Eigen::Dynamic, Eigen::Dynamic>;
    MatL compL = MatL::Zero(s2, s2);
    for (int i = 1; i < s2; ++i) compL(i, i - 1) = 1;
    for (int i = 0; i < s2; ++i) {
      Cplx c0 = -coeff[static_cast<size_t>(i)] / coeff[static_cast<size_t>(s2)];
      compL(i, s2 - 1) = CplxL(c0.real(), c0.imag());
    }
    Eigen::ComplexEigenSolver<MatL> esL(compL);
    if (esL.info() != Eigen::Success)
      throw RootExtractionFailure("inhom_from_hom: extended companion eigensolve failed");
    for (int i = 0; i < s2; ++i) {
      CplxL r = esL.eigenvalues()(i);
      roots[static_cast<size_t>(i)] = Cplx(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    }
    if (poly_resid(roots) > 1e-4)
      throw RootExtractionFailure("inhom_from_hom: root extraction did not converge");
  }
  BetheRootSet rs;
  rs.kind = BetheKind::Inhomogeneous;
  rs.epsilon = -1;
  rs.level = N;
  rs.symRoots = roots;
  std::sort(rs.symRoots.begin(), rs.symRoots.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (Cplx U : rs.symRoots) rs.uRoots.push_back(u_of_sym(p, U));
  for (int i = 0; i < s2; ++i) {
    double sc = 0;
    Cplx v = e_inhom(p, -1, i, rs.uRoots, &sc);
    rs.residuals.push_back(std::abs(v) / std::max(sc, 1e-300));
  }
  return rs;
}

}  // namespace leonard
