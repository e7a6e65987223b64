#include "leonard/bethe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "leonard/qcalc.hpp"

namespace leonard {

std::pair<Cplx, Cplx> lambda12(const ParamSet& p, int epsilon, Cplx u) {
  if (u == Cplx(0)) throw DomainError("lambda12: u = 0");
  const Cplx q = p.q;
  const int s2 = p.twoS;
  const Cplx z = p.zeta();
  const Cplx bb = p.b, cs = p.cpar(Label::AStar);
  const Cplx cb = p.cpar(Label::A), bs = p.bStar;
  const Cplx ui = Cplx(1) / u;
  const Cplx ue = (epsilon > 0) ? u : ui;
  // trailing spectral-ratio factors select (b*/b) for eps=+ and (c/c*) for eps=-
  const Cplx w1 = (epsilon > 0) ? (u + ui * bs / bb) : (u * cb / cs + ui);
  Cplx l1 = std::pow(q, -s2 - 1) / ue * (std::pow(q, s2 + 1) * u / z - z * ui) *
            (std::pow(q, s2 + 1) * u * z - ui / z) *
            (u * cs * std::pow(q, -s2) + ui * bb * std::pow(q, s2)) * w1;
  const Cplx denom2 = q * u * u - Cplx(1) / (q * u * u);
  if (denom2 == Cplx(0)) throw DomainError("lambda12: pole of Lambda_2 (q u^2 = q^-1 u^-2)");
  const Cplx w2 = (epsilon > 0) ? (q * q * u * bs / bb + ui) : (q * q * u + ui * cb / cs);
  Cplx l2 = (u * u - ui * ui) * std::pow(q, -s2 - 1) / (ue * denom2) *
            (std::pow(q, s2 - 1) * ui * z - u / z) * (std::pow(q, s2 - 1) * ui / z - u * z) *
            (q * q * u * bb * std::pow(q, s2) + ui * cs * std::pow(q, -s2)) * w2;
  return {l1, l2};
}

Cplx coeff_f(Cplx q, Cplx u, Cplx v) {
  Cplx den = bfun(v / u) * bfun(q * u * v);
  if (den == Cplx(0)) throw DomainError("coeff_f: pole (u = ±v or b(quv) = 0)");
  return bfun(q * v / u) * bfun(u * v) / den;
}
Cplx coeff_h(Cplx q, Cplx u, Cplx v) {
  Cplx den = bfun(q * u * v) * bfun(u / v);
  if (den == Cplx(0)) throw DomainError("coeff_h: pole (u = ±v or b(quv) = 0)");
  return bfun(q * q * u * v) * bfun(q * u / v) / den;
}

Cplx e_hom(const ParamSet& p, int epsilon, int i, const std::vector<Cplx>& u, double* scale) {
  const Cplx q = p.q;
  const Cplx ui = u[static_cast<size_t>(i)];
  Cplx pf = 1, ph = 1;
  for (size_t j = 0; j < u.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    pf *= coeff_f(q, ui, u[j]);
    ph *= coeff_h(q, ui, u[j]);
  }
  auto [l1, l2] = lambda12(p, epsilon, ui);
  Cplx t1 = -bfun(ui * ui) / bfun(q * ui * ui) * pf * l1;
  Cplx t2 = ph * l2;
  if (scale) *scale = std::abs(t1) + std::abs(t2);
  return t1 + t2;
}

Cplx e_inhom(const ParamSet& p, int epsilon, int i, const std::vector<Cplx>& u, double* scale) {
  const Cplx q = p.q;
  const int s2 = p.twoS;
  if (static_cast<int>(u.size()) != s2)
    throw DomainError("e_inhom: need exactly 2s variables");
  const Cplx z = p.zeta();
  const Cplx ui = u[static_cast<size_t>(i)];
  const Cplx nu = (epsilon > 0) ? std::pow(q, -1 - 2 * s2) * p.cpar(Label::AStar)
                                : std::pow(q, 1 + 2 * s2) * p.b;
  Cplx pf = 1, ph = 1, pd = 1;
  for (size_t j = 0; j < u.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    pf *= coeff_f(q, ui, u[j]);
    ph *= coeff_h(q, ui, u[j]);
    pd *= bfun(ui / u[j]) * bfun(q * ui * u[j]);
  }
  Cplx zprod = 1;
  for (int k = 0; k <= s2; ++k) {
    Cplx x = qpow_half(q, 1 + 2 * k - s2);  // q^(1/2 + k - s)
    zprod *= bfun(x * z * ui) * bfun(x * ui / z);
  }
  if (pd == Cplx(0)) throw DomainError("e_inhom: coincident-root pole");
  auto [l1, l2] = lambda12(p, epsilon, ui);
  Cplx t1 = bfun(ui * ui) / bfun(q * ui * ui) * std::pow(ui, epsilon) * pf * l1;
  Cplx t2 = -std::pow(q * q * ui * ui * ui, -epsilon) * ph * l2;
  Cplx t3 = nu * std::pow(ui, -2 * epsilon) * bfun(ui * ui) / bfun(q) * zprod / pd;
  if (scale) *scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
  return t1 + t2 + t3;
}

Cplx sym_of_u(const ParamSet& p, Cplx u) {
  const Cplx q = p.q;
  return (q * u * u + Cplx(1) / (q * u * u)) / (q + Cplx(1) / q);
}

Cplx u_of_sym(const ParamSet& p, Cplx U, bool otherBranch) {
  const Cplx q = p.q;
  const Cplx c = (q + Cplx(1) / q) * U;
  const Cplx disc = std::sqrt(c * c - Cplx(4));
  Cplx u2a = (c + disc) / (2.0 * q);
  Cplx u2b = (c - disc) / (2.0 * q);
  bool firstLarger = std::abs(u2a) >= std::abs(u2b);
  Cplx u2 = (firstLarger != otherBranch) ? u2a : u2b;
  Cplx r = std::sqrt(u2);
  if (r.real() < 0 || (r.real() == 0 && r.imag() < 0)) r = -r;
  return r;
}

Cplx eigenvalue_from_roots(const ParamSet& p, const BetheRootSet& roots) {
  if (roots.kind != BetheKind::Inhomogeneous)
    throw KindMismatch("eigenvalue_from_roots: inhomogeneous root set required");
  const Cplx q = p.q;
  const int s2 = p.twoS;
  const Cplx z = p.zeta();
  Cplx ssum = 0;  // sum of (q u^2 + q^-1 u^-2) = (q + 1/q) sum U
  for (Cplx U : roots.symRoots) ssum += (q + Cplx(1) / q) * U;
  if (roots.epsilon > 0) {
    return std::pow(q, -2 * s2) *
           (p.cpar(Label::AStar) * (z * z + Cplx(1) / (z * z)) * qnum(s2, q) +
            std::pow(q, s2) * (p.b * std::pow(q, s2) + p.cpar(Label::A) * std::pow(q, -s2)) -
            q * p.cpar(Label::AStar) * ssum);
  }
  return std::pow(q, 2 * s2) *
         (p.b * (z * z + Cplx(1) / (z * z)) * qnum(s2, q) +
          std::pow(q, -s2) *
              (p.bStar * std::pow(q, s2) + p.cpar(Label::AStar) * std::pow(q, -s2)) -
          (Cplx(1) / q) * p.b * ssum);
}

ExchangeCoeffs exchange_coeffs(Cplx alpha, Cplx beta, int epsilon, Cplx q, Cplx u, Cplx v,
                               int m) {
  auto gam = [&](Cplx x, int mm) {
    Cplx ap = (epsilon > 0) ? beta : alpha;   // alpha^((1-eps)/2) beta^((1+eps)/2)
    Cplx am = (epsilon > 0) ? alpha : beta;
    return ap * std::pow(q, -mm) * x - am * std::pow(q, mm) / x;
  };
  ExchangeCoeffs c;
  const Cplx bq = bfun(q);
  const Cplx g1m1 = gam(Cplx(1), m + 1);
  if (g1m1 == Cplx(0)) throw DomainError("exchange_coeffs: gamma(1, m+1) = 0");
  for (Cplx d : {bfun(u / v), bfun(v / u), bfun(q * u * v), bfun(q * u * u), bfun(q * v * v)})
    if (d == Cplx(0)) throw DomainError("exchange_coeffs: pole in a b-denominator");
  c.f = coeff_f(q, u, v);
  c.h = coeff_h(q, u, v);
  c.g = gam(u / v, m + 1) / g1m1 * bq * bfun(v * v) / (bfun(q * v * v) * bfun(u / v));
  c.w = -gam(u * v, m) / g1m1 * bq / bfun(q * u * v);
  c.k = gam(v / u, m + 1) / g1m1 * bq * bfun(q * q * u * u) / (bfun(q * u * u) * bfun(v / u));
  c.n = gam(Cplx(1) / (u * v), m + 2) / g1m1 * bq * bfun(v * v) * bfun(q * q * u * u) /
        (bfun(q * u * u) * bfun(q * v * v) * bfun(q * u * v));
  c.qc = gam(u / v, m) * bq * bfun(u * v) / (g1m1 * bfun(u / v) * bfun(q * u * v));
  c.r = bq * bfun(u * u) * gam(Cplx(1), m) * gam(v / u, m + 1) /
        (g1m1 * g1m1 * bfun(q * u * u) * bfun(v / u));
  c.sc = bq * bq * bfun(u * u) * gam(Cplx(1) / (v * v), m + 1) * gam(v / u, m + 1) /
         (g1m1 * g1m1 * bfun(q * u * u) * bfun(q * v * v) * bfun(v / u));
  c.x = bq * bfun(u * u) * bfun(q * u / v) * gam(Cplx(1) / (u * v), m + 1) /
        (g1m1 * bfun(q * u * u) * bfun(u / v) * bfun(q * u * v));
  c.y = -bq * bq * gam(Cplx(1) / (v * v), m + 1) * gam(u * v, m) /
        (g1m1 * g1m1 * bfun(q * v * v) * bfun(q * u * v));
  c.z = -bq * gam(Cplx(1), m) * gam(u * v, m) / (g1m1 * g1m1 * bfun(q * u * v));
  c.gamma_eps = gam(u, m);
  return c;
}

// ---------------------------------------------------------------------------
// solver internals

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct Residual {
  CVec value;
  Eigen::VectorXd scale;
};

Residual eval_system(const ParamSet& p, BetheKind kind, int epsilon, const CVec& U) {
  const int n = static_cast<int>(U.size());
  std::vector<Cplx> us(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) us[static_cast<size_t>(k)] = u_of_sym(p, U(k));
  Residual r;
  r.value.resize(n);
  r.scale.resize(n);
  for (int i = 0; i < n; ++i) {
    double sc = 0;
    Cplx v = (kind == BetheKind::Homogeneous) ? e_hom(p, epsilon, i, us, &sc)
                                              : e_inhom(p, epsilon, i, us, &sc);
    r.value(i) = v;
    r.scale(i) = std::max(sc, 1e-300);
  }
  return r;
}

double norm_resid(const Residual& r) {
  double m = 0;
  for (int i = 0; i < r.value.size(); ++i)
    m = std::max(m, std::abs(r.value(i)) / r.scale(i));
  return m;
}

std::optional<CVec> newton(const ParamSet& p, BetheKind kind, int epsilon, CVec U,
                           const SolverOptions& opt) {
  const int n = static_cast<int>(U.size());
  for (int it = 0; it < opt.maxNewtonIters; ++it) {
    Residual r;
    try {
      r = eval_system(p, kind, epsilon, U);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!r.value.allFinite()) return std::nullopt;
    double r0 = norm_resid(r);
    if (r0 < opt.newtonTol) return U;
    CMat J(n, n);
    bool bad = false;
    for (int k = 0; k < n && !bad; ++k) {
      double h = 1e-7 * std::max(1.0, std::abs(U(k)));
      CVec Up = U, Um = U;
      Up(k) += h;
      Um(k) -= h;
      try {
        Residual rp = eval_system(p, kind, epsilon, Up);
        Residual rm = eval_system(p, kind, epsilon, Um);
        if (!rp.value.allFinite() || !rm.value.allFinite()) { bad = true; break; }
        J.col(k) = (rp.value - rm.value) / (2.0 * h);
      } catch (const Error&) {
        bad = true;
      }
    }
    if (bad) return std::nullopt;
    CVec dU = J.partialPivLu().solve(r.value);
    if (!dU.allFinite()) return std::nullopt;
    double lam = 1.0;
    bool stepped = false;
    CVec Un;
    while (lam > 1e-10) {
      Un = U - lam * dU;
      try {
        Residual rn = eval_system(p, kind, epsilon, Un);
        if (rn.value.allFinite() && norm_resid(rn) < r0) {
          stepped = true;
          break;
        }
      } catch (const Error&) {
      }
      lam /= 2;
    }
    if (!stepped) return (r0 < 1e-10) ? std::optional<CVec>(U) : std::nullopt;
    U = Un;
  }
  try {
    Residual r = eval_system(p, kind, epsilon, U);
    if (norm_resid(r) < 1e-10) return U;
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool admissible(const CVec& U, double tol) {
  double scale = 1.0;
  for (int i = 0; i < U.size(); ++i) scale = std::max(scale, std::abs(U(i)));
  for (int i = 0; i < U.size(); ++i) {
    if (std::abs(U(i) - Cplx(1)) < tol || std::abs(U(i) + Cplx(1)) < tol) return false;
    for (int j = i + 1; j < U.size(); ++j)
      if (std::abs(U(i) - U(j)) < tol * scale) return false;
  }
  return true;
}

// tolerance-aware multiset comparison (greedy nearest matching)
bool same_multiset(const CVec& a, const CVec& b, double tol) {
  std::vector<bool> used(static_cast<size_t>(b.size()), false);
  for (int i = 0; i < a.size(); ++i) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int j = 0; j < b.size(); ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      double d = std::abs(a(i) - b(j));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best < 0 || bd > tol) return false;
    used[static_cast<size_t>(best)] = true;
  }
  return true;
}

std::vector<Cplx> seed_components(const ParamSet& p, BetheKind kind, int epsilon, int nroots) {
  const Cplx q = p.q;
  std::vector<Cplx> comps;
  for (int M = 0; M < p.dim(); ++M)
    comps.push_back(p.r0 * p.theta(Label::ADiam, M) / (q + Cplx(1) / q));
  if (kind == BetheKind::Inhomogeneous && nroots > 0) {
    // per-level root sums implied by the eigenvalue formulas
    const Cplx z = p.zeta();
    const int s2 = p.twoS;
    for (int N = 0; N < p.dim(); ++N) {
      Cplx ssum;
      if (epsilon > 0) {
        ssum = (p.cpar(Label::AStar) * (z * z + Cplx(1) / (z * z)) * qnum(s2, q) +
                std::pow(q, s2) * (p.b * std::pow(q, s2) + p.cpar(Label::A) * std::pow(q, -s2)) -
                std::pow(q, 2 * s2) * p.theta(Label::A, N)) /
               (q * p.cpar(Label::AStar));
      } else {
        ssum = (p.b * (z * z + Cplx(1) / (z * z)) * qnum(s2, q) +
                std::pow(q, -s2) *
                    (p.bStar * std::pow(q, s2) + p.cpar(Label::AStar) * std::pow(q, -s2)) -
                std::pow(q, -2 * s2) * p.theta(Label::AStar, N)) /
               (p.b / q);
      }
      comps.push_back(ssum / ((q + Cplx(1) / q) * static_cast<double>(nroots)));
    }
  }
  double sc = 1.0;
  for (Cplx c : comps) sc = std::max(sc, std::abs(c));
  for (int k = 0; k < 17; ++k)
    comps.push_back(Cplx(-1.5 * sc + 3.0 * sc * k / 16.0, 0.0));
  return comps;
}

std::vector<CVec> solve_all(const ParamSet& p, BetheKind kind, int epsilon, int nroots,
                            const SolverOptions& opt, bool stopAtTwo = false) {
  std::vector<CVec> found;
  if (nroots == 0) {
    found.emplace_back(CVec());
    return found;
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Cplx> comps = seed_components(p, kind, epsilon, nroots);
  double sc = 1.0;
  for (Cplx c : comps) sc = std::max(sc, std::abs(c));
  bool allreal = std::abs(p.q.imag()) < 1e-14 && std::abs(p.r0.imag()) < 1e-14 &&
                 std::abs(p.b.imag()) < 1e-14 && std::abs(p.bStar.imag()) < 1e-14 &&
                 std::abs(p.bDiam.imag()) < 1e-14;
  const int budget = opt.budgetPerUnknownSq * nroots * nroots;
  std::uniform_int_distribution<size_t> pick(0, comps.size() - 1);
  for (int trial = 0; trial < budget; ++trial) {
    CVec U0(nroots);
    for (int k = 0; k < nroots; ++k)
      U0(k) = comps[pick(rng)] * (1.0 + 0.08 * gauss(rng));
    bool realPhase = allreal && trial < budget / 3;
    if (!realPhase) {
      if (trial < 2 * budget / 3 && nroots >= 2) {
        // conjugate-pair seeds: complex admissible solutions of real-parameter
        // systems come in conjugate pairs
        for (int k = 0; k + 1 < nroots; k += 2) {
          Cplx w = U0(k) + Cplx(0, sc * (0.1 + 0.5 * std::abs(gauss(rng))));
          U0(k) = w;
          U0(k + 1) = std::conj(w);
        }
      } else {
        for (int k = 0; k < nroots; ++k) U0(k) += Cplx(0, 0.4 * sc * gauss(rng));
      }
    }
    auto U = newton(p, kind, epsilon, U0, opt);
    if (!U) continue;
    if (!admissible(*U, opt.admissTol)) continue;
    double scale = 1.0;
    for (int i = 0; i < U->size(); ++i) scale = std::max(scale, std::abs((*U)(i)));
    bool dup = false;
    for (const auto& V : found)
      if (same_multiset(*U, V, opt.dedupTol * scale)) {
        dup = true;
        break;
      }
    if (dup) continue;
    CVec Us = *U;
    std::sort(Us.data(), Us.data() + Us.size(), [](Cplx a, Cplx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    found.push_back(Us);
    if (stopAtTwo && found.size() >= 2) return found;
  }
  return found;
}

BetheRootSet make_root_set(const ParamSet& p, BetheKind kind, int epsilon, int level,
                           const CVec& U) {
  BetheRootSet rs;
  rs.kind = kind;
  rs.epsilon = epsilon;
  rs.level = level;
  const int n = static_cast<int>(U.size());
  std::vector<Cplx> us(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    rs.symRoots.push_back(U(k));
    us[static_cast<size_t>(k)] = u_of_sym(p, U(k));
  }
  rs.uRoots = us;
  for (int i = 0; i < n; ++i) {
    double sc = 0;
    Cplx v = (kind == BetheKind::Homogeneous) ? e_hom(p, epsilon, i, us, &sc)
                                              : e_inhom(p, epsilon, i, us, &sc);
    rs.residuals.push_back(std::abs(v) / std::max(sc, 1e-300));
  }
  return rs;
}

}  // namespace

BetheRootSet solve_hom(const ParamSet& p, int epsilon, int level, const SolverOptions& opt) {
  if (level < 0 || level > p.twoS) throw DomainError("solve_hom: level out of range");
  auto sols = solve_all(p, BetheKind::Homogeneous, epsilon, level, opt);
  if (sols.empty())
    throw SolverFailure("solve_hom: no admissible solution within the multistart budget");
  if (sols.size() > 1)
    throw AmbiguousSolution("solve_hom: " + std::to_string(sols.size()) +
                            " distinct admissible solutions found (uniqueness hypothesis violated)");
  return make_root_set(p, BetheKind::Homogeneous, epsilon, level, sols[0]);
}

std::vector<BetheRootSet> solve_inhom_all(const ParamSet& p, int epsilon,
                                          const SolverOptions& opt) {
  auto sols = solve_all(p, BetheKind::Inhomogeneous, epsilon, p.twoS, opt);
  if (sols.empty())
    throw SolverFailure("solve_inhom: no admissible solution within the multistart budget");
  std::vector<BetheRootSet> out;
  Label which = (epsilon > 0) ? Label::A : Label::AStar;
  for (const auto& U : sols) {
    BetheRootSet rs = make_root_set(p, BetheKind::Inhomogeneous, epsilon, -1, U);
    Cplx eig = eigenvalue_from_roots(p, rs);
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int N = 0; N <= p.twoS; ++N) {
      double dd = std::abs(eig - p.theta(which, N));
      if (dd < bd) {
        bd = dd;
        best = N;
      }
    }
    rs.level = best;
    out.push_back(std::move(rs));
  }
  std::sort(out.begin(), out.end(),
            [](const BetheRootSet& a, const BetheRootSet& b) { return a.level < b.level; });
  return out;
}

BetheRootSet solve_inhom(const ParamSet& p, int epsilon, int targetLevel,
                         const SolverOptions& opt) {
  if (targetLevel < 0 || targetLevel > p.twoS)
    throw DomainError("solve_inhom: level out of range");
  auto all = solve_inhom_all(p, epsilon, opt);
  Label which = (epsilon > 0) ? Label::A : Label::AStar;
  for (auto& rs : all) {
    if (rs.level != targetLevel) continue;
    Cplx eig = eigenvalue_from_roots(p, rs);
    Cplx want = p.theta(which, targetLevel);
    if (std::abs(eig - want) < 1e-6 * std::max(1.0, std::abs(want))) return rs;
  }
  throw NoMatchingLevel("solve_inhom: no admissible solution matches level " +
                        std::to_string(targetLevel));
}

}  // namespace leonard
