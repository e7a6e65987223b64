#include "leonard/bslinear.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace leonard {

Cplx g_prod(const ParamSet& p, Cplx u, const std::vector<Cplx>& ubar) {
  Cplx r = 1;
  for (Cplx ui : ubar) {
    Cplx d = bfun(u / ui) * bfun(p.q * u * ui);
    if (d == Cplx(0)) throw DomainError("g_prod: pole");
    r /= d;
  }
  return r;
}

Cplx y_eps(const ParamSet& p, int epsilon, Cplx u, const std::vector<Cplx>& ubar) {
  const Cplx q = p.q;
  const int s2 = p.twoS;
  auto [l1, l2] = lambda12(p, epsilon, u);
  Cplx p1 = 1, p2 = 1;
  for (Cplx ui : ubar) {
    p1 *= bfun(u / (q * ui)) * bfun(u * ui);
    p2 *= bfun(q * u / ui) * bfun(q * q * u * ui);
  }
  Cplx out = std::pow(u, 2 * epsilon + 1) * l1 / (bfun(u * u) * bfun(q * u * u)) * p1 +
             std::pow(q, -epsilon - 1) / u * l2 / (bfun(u * u) * bfun(q * q * u * u)) * p2;
  if (epsilon > 0) {
    const Cplx z = p.zeta();
    Cplx zp = 1;
    for (int j = 0; j <= s2; ++j) {
      Cplx x = qpow_half(q, 1 + 2 * j - s2);
      zp *= bfun(x * u * z) * bfun(x * u / z);
    }
    out -= std::pow(q, -1 - 2 * s2) * p.cpar(Label::AStar) * zp;
  }
  return out;
}

BSSystem build_system(const TripleRealization& t, int epsilon, int M,
                      const std::vector<Cplx>& vars) {
  const ParamSet& p = t.params;
  const int n = static_cast<int>(vars.size());
  if (n != p.dim()) throw DomainError("build_system: need 2s+1 variables");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(vars[i] - vars[j]) < 1e-10 * std::max(std::abs(vars[i]), std::abs(vars[j])))
        throw DomainError("build_system: variables must be distinct");
  const Cplx q = p.q;
  const Cplx rho = p.rho(), eta = p.eta(), etas = p.etaStar();
  BSSystem sys;
  sys.epsilon = epsilon;
  sys.M = M;
  sys.variables = vars;
  sys.L = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Cplx> Yj;
    for (int l = 0; l < n; ++l)
      if (l != j) Yj.push_back(vars[l]);
    for (int k = 0; k < n; ++k) {
      std::vector<Cplx> Yk;
      for (int l = 0; l < n; ++l)
        if (l != k) Yk.push_back(vars[l]);
      Cplx yj = vars[static_cast<size_t>(j)], yk = vars[static_cast<size_t>(k)];
      sys.L(j, k) = std::pow(yj / yk, epsilon) * bfun(yk * yk) / bfun(yj * yj) *
                    g_prod(p, yk, Yk) * y_eps(p, epsilon, yk, Yj);
    }
    Cplx yj = vars[static_cast<size_t>(j)];
    sys.L(j, j) += (q + Cplx(1) / q) * (q + Cplx(1) / q) /
                   (rho * bfun(yj * yj) * bfun(q * q * yj * yj)) *
                   (etas + eta * (q * yj * yj + Cplx(1) / (q * yj * yj)) / (q + Cplx(1) / q));
  }
  sys.Msys = sys.L - p.theta(Label::A, M) * Mat::Identity(n, n);
  return sys;
}

VerifyReport verify_solution(const TripleRealization& t, const BSSystem& sys, double tol) {
  const int n = static_cast<int>(sys.variables.size());
  VerifyReport rep;
  rep.suite = "bs-system";
  rep.paramsHash = params_hash(t.params.canonical());
  Vec X(n);
  for (int k = 0; k < n; ++k) {
    std::vector<Cplx> Yk;
    for (int l = 0; l < n; ++l)
      if (l != k) Yk.push_back(sys.variables[static_cast<size_t>(l)]);
    X(k) = scalar_theorem(t, sys.epsilon, sys.M, Yk).value;
  }
  double resid = (sys.Msys * X).norm() / std::max(sys.Msys.norm() * X.norm(), 1e-300);
  rep.add("row-contraction", resid, tol);
  Eigen::JacobiSVD<Mat> svd(sys.Msys);
  const auto& sv = svd.singularValues();
  rep.add("rank-gap (smallest/second)", sv(n - 1) / std::max(sv(n - 2), 1e-300), tol);
  return rep;
}

KernelVector nullspace_route(const BSSystem& sys, double gapTol) {
  const int n = static_cast<int>(sys.variables.size());
  Eigen::JacobiSVD<Mat> svd(sys.Msys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  KernelVector kv;
  kv.svGap = sv(n - 1) / std::max(sv(n - 2), 1e-300);
  if (kv.svGap > gapTol)
    throw RankDeficiencyUnexpected("nullspace_route: rank is not 2s (gap " +
                                   std::to_string(kv.svGap) + ")");
  kv.v = svd.matrixV().col(n - 1);
  return kv;
}

DetRouteHalf det_route_s_half(const TripleRealization& t, int epsilon, int M,
                              const std::vector<Cplx>& vars) {
  const ParamSet& p = t.params;
  if (p.twoS != 1) throw SpinMismatch("det_route_s_half: requires s = 1/2");
  if (vars.size() != 2) throw DomainError("det_route_s_half: need two variables");
  const Cplx q = p.q, r0 = p.r0;
  const Cplx bb = p.b, bs = p.bStar, bd = p.bDiam;
  const Cplx y1 = vars[0], y2 = vars[1];
  const Cplx q2 = q * q;
  DetRouteHalf out;
  if (epsilon < 0 && M == 0) {
    out.m11 = q * y1 * bfun(y1 * y1) * y_eps(p, -1, y1, {y1});
    out.m12 = -q * y2 * bfun(y2 * y2) * y_eps(p, -1, y2, {y2});
    out.psi = q2 * r0 * r0 * bb * bb / (bfun(q) * qpoch(q2 * r0 * r0 * bb * bb, q2, 1));
  } else if (epsilon < 0 && M == 1) {
    Cplx c = bfun(q) / (q2 * r0 * r0 * r0 * bb * bs * bd);
    out.m11 = c * y1 * bfun(y1 * y1);
    out.m12 = -c * y2 * bfun(y2 * y2);
    out.psi = -q * q2 * r0 * r0 * bb * bb * bs * qpoch(-q * r0 * bb * bd / bs, q2, 1) *
              qpoch(-q * r0 * bd * bs / bb, q2, 1) / qpoch(q2 * r0 * r0 * bb * bb, q2, 1);
  } else if (epsilon > 0 && (M == 0 || M == 1)) {
    auto zpoly = [&](Cplx x) {
      if (M == 0)
        return q * q2 * r0 * bd * x * x + q * r0 * bd / (x * x) - Cplx(1) +
               q2 * r0 * r0 * bd * (q * (q2 - Cplx(1)) * r0 * bb * bs - bd);
      return q * q2 * r0 * bb * bd * x * x + q * r0 * bb * bd / (x * x) +
             q * (q2 - Cplx(1)) * r0 * bd * bs - bb * (q2 * r0 * r0 * bd * bd + Cplx(1));
    };
    Cplx c = Cplx(1) / (q2 * q2 * r0 * r0 * r0 * r0 * bb * bs * bd * bd);
    out.m11 = -c * bfun(y1 * y1) / y1 * zpoly(y1);
    out.m12 = c * bfun(y2 * y2) / y2 * zpoly(y2);
    out.psi = (M == 0) ? -r0 * bb * bd : -r0 * bd;
  } else {
    throw DomainError("det_route_s_half: M must be 0 or 1");
  }
  return out;
}

Cplx racah_via_det(const TripleRealization& t, int M, int N, const std::vector<Cplx>& vars) {
  const ParamSet& p = t.params;
  const int n = p.dim();
  if (static_cast<int>(vars.size()) != n)
    throw DomainError("racah_via_det: need 2s+1 variables (roots + one extra)");
  // the leading 2s variables must be on-shell at the requested level
  {
    std::vector<Cplx> roots(vars.begin(), vars.end() - 1);
    for (int i = 0; i < p.twoS; ++i) {
      double sc = 0;
      Cplx e = e_inhom(p, -1, i, roots, &sc);
      if (std::abs(e) / std::max(sc, 1e-300) > 1e-4)
        throw DomainError("racah_via_det: leading variables do not solve the level-" +
                          std::to_string(N) + " equations");
    }
    BetheRootSet rs;
    rs.kind = BetheKind::Inhomogeneous;
    rs.epsilon = -1;
    rs.level = N;
    for (Cplx u : roots) rs.symRoots.push_back(sym_of_u(p, u));
    Cplx eig = eigenvalue_from_roots(p, rs);
    Cplx want = p.theta(Label::AStar, N);
    if (std::abs(eig - want) > 1e-4 * std::max(1.0, std::abs(want)))
      throw DomainError("racah_via_det: roots select a different eigenvalue level");
  }
  if (M == 0) return Cplx(1);
  if (p.twoS == 1) {
    // closed-form route: X(vars \ y2) = psi (-1)^2 det[.,1] = psi * m11,
    // so the polynomial ratio at the root y1 gives R_M
    DetRouteHalf dM = det_route_s_half(t, -1, M, vars);
    DetRouteHalf d0 = det_route_s_half(t, -1, 0, vars);
    return (dM.psi * dM.m11) / (d0.psi * d0.m11);
  }
  // kernel route: scale each kernel on the off-shell components via the
  // covector oracle, then ratio the predicted on-shell component across M
  auto predict = [&](int Mlev) {
    BSSystem sys = build_system(t, -1, Mlev, vars);
    KernelVector kv = nullspace_route(sys);
    Cplx acc = 0;
    int cnt = 0;
    for (int k = 0; k < n - 1; ++k) {
      if (std::abs(kv.v(k)) < 1e-12) continue;
      std::vector<Cplx> Yk;
      for (int l = 0; l < n; ++l)
        if (l != k) Yk.push_back(vars[static_cast<size_t>(l)]);
      acc += scalar_direct(t, -1, Mlev, Yk).value / kv.v(k);
      ++cnt;
    }
    if (cnt == 0) throw RootExtractionFailure("racah_via_det: kernel anchor degenerate");
    return (acc / static_cast<double>(cnt)) * kv.v(n - 1);
  };
  Cplx x0 = predict(0);
  if (x0 == Cplx(0)) throw RootExtractionFailure("racah_via_det: vanishing reference value");
  return predict(M) / x0;
}

}  // namespace leonard
