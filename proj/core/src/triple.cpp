#include "leonard/triple.hpp"

#include <cmath>

namespace leonard {

SpinRep spin_rep(int twoS, Cplx q) {
  if (twoS < 1) throw DomainError("spin_rep: need 2s+1 >= 2");
  if (q == Cplx(0) || q == Cplx(1) || q == Cplx(-1))
    throw DomainError("spin_rep: q in {0, 1, -1}");
  const int n = twoS + 1;
  SpinRep r;
  r.qS3 = Mat::Zero(n, n);
  r.qS3inv = Mat::Zero(n, n);
  r.Sp = Mat::Zero(n, n);
  r.Sm = Mat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    // q^(s+1-k), exponent in half-units: 2(s+1-k) = twoS + 2 - 2k
    r.qS3(k - 1, k - 1) = qpow_half(q, twoS + 2 - 2 * k);
    r.qS3inv(k - 1, k - 1) = qpow_half(q, -(twoS + 2 - 2 * k));
  }
  for (int k = 1; k <= twoS; ++k) {
    Cplx v = std::sqrt(qnum(k, q) * qnum(twoS + 1 - k, q));
    r.Sm(k, k - 1) = v;
    r.Sp(k - 1, k) = v;
  }
  return r;
}

TriDiagCoeffs tridiag_coeffs(const ParamSet& p, Label basis, Label actor) {
  if (basis == actor) throw DomainError("tridiag_coeffs: labels must differ");
  const Cplx q = p.q, r0 = p.r0;
  const int s2 = p.twoS;
  // role parameters (a = basis role, b = actor role, c = spectator)
  Cplx pa, ca, pb, cb, pc, cc;
  if (actor == succ(basis)) {
    Label a = basis, b = actor, c = succ(actor);
    pa = p.bpar(a); ca = p.cpar(a);
    pb = p.bpar(b); cb = p.cpar(b);
    pc = p.bpar(c); cc = p.cpar(c);
  } else {
    // reversed pair: same closed forms with the roles of the cyclic triple
    // (actor, basis, .) and the spectator parameters swapped
    Label a = actor, b = basis, c = succ(basis);
    pa = p.bpar(b); ca = p.cpar(b);
    pb = p.bpar(a); cb = p.cpar(a);
    pc = p.cpar(c) * std::pow(q, -2 * s2);
    cc = p.bpar(c) * std::pow(q, 2 * s2);
  }
  auto sub_at = [&](int M) {  // A_{M,M-1}
    Cplx num = std::pow(q, 2 - 2 * s2) * (Cplx(1) - std::pow(q, 2 * M)) *
               (ca - pa * std::pow(q, 2 * M + 2 * s2)) *
               (pb * pc * r0 * std::pow(q, 2 * s2 - 1) + pa * std::pow(q, 2 * M - 2)) *
               (ca * cc * r0 / q + cb * std::pow(q, 2 * M - 2));
    Cplx den = (ca - pa * std::pow(q, 4 * M - 2)) * (ca - pa * std::pow(q, 4 * M));
    if (den == Cplx(0)) throw DegenerateParams("tridiag_coeffs: spectral collision");
    return num / den;
  };
  auto sup_at = [&](int M) {  // A_{M-1,M}
    Cplx num = (Cplx(1) - std::pow(q, 2 * M - 2 * s2 - 2)) * (ca - pa * std::pow(q, 2 * M - 2)) *
               (ca + pb * pc * r0 * std::pow(q, 2 * M + 2 * s2 - 1)) *
               (cb + pa * cc * r0 * std::pow(q, 2 * M - 1));
    Cplx den = (ca - pa * std::pow(q, 4 * M - 4)) * (ca - pa * std::pow(q, 4 * M - 2));
    if (den == Cplx(0)) throw DegenerateParams("tridiag_coeffs: spectral collision");
    return num / den;
  };
  TriDiagCoeffs out;
  const Cplx theta_b0 = pb + cb;
  for (int M = 1; M <= s2; ++M) {
    out.sub.push_back(sub_at(M));   // entry (M, M-1), column M-1
    out.sup.push_back(sup_at(M));   // entry (M-1, M), column M
  }
  for (int M = 0; M <= s2; ++M) {
    Cplx up = (M + 1 <= s2) ? sup_at(M + 1) : Cplx(0);
    Cplx dn = (M >= 1) ? sub_at(M) : Cplx(0);
    out.diag.push_back(theta_b0 - up - dn);
  }
  return out;
}

Ladders ladder_scalars(const ParamSet& p) {
  const Cplx q = p.q, r0 = p.r0;
  const int s2 = p.twoS;
  const Cplx pa = p.bpar(Label::A), ca = p.cpar(Label::A);
  const Cplx pb = p.bpar(Label::AStar), cb = p.cpar(Label::AStar);
  const Cplx pc = p.bpar(Label::ADiam), cc = p.cpar(Label::ADiam);
  auto fstep = [&](int k) {
    Cplx den = pa * std::pow(q, 2 * k) + r0 / q * cb * pc;
    if (den == Cplx(0)) throw DegenerateParams("ladder f: vanishing denominator");
    return (ca * std::pow(q, -2 * k - 2) + r0 / q * cb * pc) / den;
  };
  auto gstep = [&](int k) {
    Cplx den = pb * std::pow(q, 2 * k) + r0 / q * ca * pc;
    if (den == Cplx(0)) throw DegenerateParams("ladder g: vanishing denominator");
    return std::pow(q, 4 * k) * (pb / cb) * (cb * std::pow(q, -2 * k) + r0 * q * ca * pc) / den;
  };
  auto hstep = [&](int k) {
    Cplx den = pc * std::pow(q, 2 * k) + r0 / q * cb * pa;
    if (den == Cplx(0)) throw DegenerateParams("ladder h: vanishing denominator");
    return std::pow(q, 4 * k) * (pc / cc) * (cc * std::pow(q, -2 * k) + r0 * q * cb * pa) / den;
  };
  Ladders L;
  const Cplx q2 = q * q;
  Cplx num = qpoch({q2 * r0 * r0 * pa * pa, q2 * r0 * r0 * pc * pc, q2 * r0 * r0 * pb * pb}, q2, s2);
  Cplx den = qpoch({-q * r0 * pa * pc / pb, -q * r0 * pa * pb / pc, -q * r0 * pc * pb / pa}, q2, s2);
  if (den == Cplx(0)) throw DegenerateParams("ladder base product: vanishing denominator");
  L.fgh0 = Cplx(s2 % 2 ? -1 : 1) * std::pow(q, s2 * (s2 - 1)) * num / den;
  L.f = {Cplx(1)};
  L.g = {Cplx(1)};
  L.h = {Cplx(1) / L.fgh0};  // gauge f0 = g0 = 1
  for (int k = 0; k < s2; ++k) {
    L.f.push_back(L.f.back() * fstep(k));
    L.g.push_back(L.g.back() * gstep(k));
    L.h.push_back(L.h.back() * hstep(k));
  }
  // independent sum route for the same base product
  Cplx tot = 0;
  Cplx gp = 1;
  for (int M = 0; M <= s2; ++M) {
    tot += k_coeff(p, Label::A, Label::AStar, Label::ADiam, M) * gp;
    if (M < s2) gp *= gstep(M);
  }
  L.fgh0_sum = nu0_coeff(p, Label::ADiam, Label::A, Label::AStar) * tot;
  return L;
}

// ---------------------------------------------------------------------------
// construction internals, templated so the bases can be built in extended
// precision (the eigenvector scales span many orders at larger spin)

namespace {

template <typename T>
struct Builder {
  using C = std::complex<T>;
  using MatT = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  using VecT = Eigen::Matrix<C, Eigen::Dynamic, 1>;

  C q, r0, bpars[3];
  int s2;
  MatT A, AStar, ADiam, ADiamComm;
  MatT basis[3], dual[3];

  static C up(Cplx z) { return C(static_cast<T>(z.real()), static_cast<T>(z.imag())); }

  C bpar(Label l) const { return bpars[static_cast<int>(l)]; }
  C cpar(Label l) const { return C(1) / (r0 * r0 * bpar(l)); }
  C theta(Label l, int M) const {
    return bpar(l) * std::pow(q, 2 * M) + cpar(l) * std::pow(q, -2 * M);
  }
  C theta_s(Label l) const { return bpar(l) * std::pow(q, s2) + cpar(l) * std::pow(q, -s2); }
  C qnumT(int n) const { return (std::pow(q, n) - std::pow(q, -n)) / (q - C(1) / q); }
  C qph(int num) const {  // q^(num/2)
    if (num % 2 == 0) return std::pow(q, num / 2);
    return std::pow(std::sqrt(q), num);
  }
  C omega(Label a, Label b, Label c) const {
    C d = q - C(1) / q;
    return -d * d *
           (theta_s(a) * theta_s(b) -
            (C(1) / r0) * (std::pow(q, s2 + 1) + std::pow(q, -s2 - 1)) * theta_s(c));
  }
  C nu0(Label a, Label b, Label c) const {
    C pa = bpar(a), ca = cpar(a), pb = bpar(b), cb = cpar(b), pc = bpar(c), cc = cpar(c);
    C q2 = q * q;
    C num = qpoch(pa / ca * q2, q2, s2) * qpoch(pb / cb * q2, q2, s2);
    C den = std::pow(-pb * pc / ca * r0 * std::pow(q, 2 * s2 + 1), s2) *
            qpoch(-pa * cc / pb * r0 * std::pow(q, 1 - 2 * s2), q2, s2) *
            qpoch(-ca * cc / cb * r0 * std::pow(q, 1 - 2 * s2), q2, s2);
    return num / den;
  }

  explicit Builder(const ParamSet& p) {
    q = up(p.q);
    r0 = up(p.r0);
    bpars[0] = up(p.b);
    bpars[1] = up(p.bStar);
    bpars[2] = up(p.bDiam);
    s2 = p.twoS;
    const int n = s2 + 1;
    // spin representation
    MatT qS3 = MatT::Zero(n, n), qS3i = MatT::Zero(n, n);
    MatT Sp = MatT::Zero(n, n), Sm = MatT::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
      qS3(k - 1, k - 1) = qph(s2 + 2 - 2 * k);
      qS3i(k - 1, k - 1) = qph(-(s2 + 2 - 2 * k));
    }
    for (int k = 1; k <= s2; ++k) {
      C v = std::sqrt(qnumT(k) * qnumT(s2 + 1 - k));
      Sm(k, k - 1) = v;
      Sp(k - 1, k) = v;
    }
    const C d = q - C(1) / q;
    const C sqbd = std::sqrt(bpar(Label::ADiam));
    const C sqcd = C(1) / (r0 * sqbd);  // branch tied to sqrt(b<>)
    const C ths = theta_s(Label::A), thss = theta_s(Label::AStar), thds = theta_s(Label::ADiam);
    A = -d / std::sqrt(r0) * sqbd * qph(s2 + 1) * (Sp * qS3) +
        d / std::sqrt(r0) * sqcd * qph(-s2 - 1) * (Sm * qS3) + ths * (qS3 * qS3);
    AStar = -d / std::sqrt(r0) * sqcd * qph(-s2 - 1) * (Sp * qS3i) +
            d / std::sqrt(r0) * sqbd * qph(s2 + 1) * (Sm * qS3i) + thss * (qS3i * qS3i);
    const C om = omega(Label::A, Label::AStar, Label::ADiam);
    ADiam = (std::pow(q, s2 - 1) * bpar(Label::ADiam) - std::pow(q, 1 - s2) * cpar(Label::ADiam)) *
                (qS3 * qS3 - qS3i * qS3i) / (q + C(1) / q) +
            (C(1) / r0) * d * d * (Sm * Sm) - d * d / (q + C(1) / q) * thds * (Sm * Sp) +
            d * std::sqrt(r0) *
                (Sm * (qph(-s2 + 1) * sqcd * thss * qS3i + qph(s2 - 1) * sqbd * ths * qS3)) +
            r0 / (q + C(1) / q) * (ths * thss + om / (d * d)) * MatT::Identity(n, n);
    ADiamComm = r0 / (q * q - C(1) / (q * q)) * (q * AStar * A - (C(1) / q) * A * AStar) +
                r0 * om / (d * (q * q - C(1) / (q * q))) * MatT::Identity(n, n);

    // seed: ground eigenvector of A* through its spectral projector
    VecT seed = project(AStar, Label::AStar, 0, VecT::Ones(n));
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(seed(i)) > std::abs(seed(imax))) imax = i;
    if (std::abs(seed(imax)) < T(1e-12) * n)
      throw DegenerateParams("ground eigenvector projection degenerate");
    seed /= seed(imax);

    // bases from spectral projections of the seed pair; the inverse
    // transitions at index 0 are the constants 1/nu0
    basis[0] = MatT::Zero(n, n);
    for (int M = 0; M < n; ++M) basis[0].col(M) = project(A, Label::A, M, seed);
    basis[1] = MatT::Zero(n, n);
    const C nuPair = nu0(Label::A, Label::AStar, Label::ADiam);
    for (int N = 0; N < n; ++N)
      basis[1].col(N) = nuPair * project(AStar, Label::AStar, N, basis[0].col(0));
    basis[2] = MatT::Zero(n, n);
    const C nuDiam = nu0(Label::AStar, Label::ADiam, Label::A);
    for (int N = 0; N < n; ++N)
      basis[2].col(N) = nuDiam * project(ADiam, Label::ADiam, N, seed);
    for (int i = 0; i < 3; ++i) dual[i] = equilibrated_inverse(basis[i]);
  }

  VecT project(const MatT& op, Label l, int j, const VecT& w) const {
    VecT v = w;
    for (int k = 0; k <= s2; ++k) {
      if (k == j) continue;
      v = (op * v - theta(l, k) * v) / (theta(l, j) - theta(l, k));
    }
    return v;
  }

  MatT equilibrated_inverse(const MatT& B) const {
    const int n = static_cast<int>(B.cols());
    Eigen::Matrix<T, Eigen::Dynamic, 1> s(n);
    MatT D = B;
    for (int j = 0; j < n; ++j) {
      s(j) = B.col(j).norm();
      if (s(j) == T(0)) throw DegenerateParams("eigenbasis column vanished");
      D.col(j) /= s(j);
    }
    MatT Dinv = D.partialPivLu().inverse();
    for (int j = 0; j < n; ++j) Dinv.row(j) /= s(j);
    return Dinv;
  }

  static Mat down(const MatT& m) {
    Mat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        out(i, j) = Cplx(static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag()));
    return out;
  }
};

}  // namespace

TripleRealization build_triple(const ParamSet& p) {
  p.validate();
  using B = Builder<long double>;
  B b(p);
  TripleRealization t;
  t.params = p;
  t.A = B::down(b.A);
  t.AStar = B::down(b.AStar);
  t.ADiam = B::down(b.ADiam);
  t.adiamCommResid =
      static_cast<double>((b.ADiam - b.ADiamComm).norm() / std::max(b.ADiam.norm(), (long double)1e-300));
  t.basisA = B::down(b.basis[0]);
  t.basisAStar = B::down(b.basis[1]);
  t.basisADiam = B::down(b.basis[2]);
  t.dualA = B::down(b.dual[0]);
  t.dualAStar = B::down(b.dual[1]);
  t.dualADiam = B::down(b.dual[2]);
  t.ladders = ladder_scalars(p);
  return t;
}

VerifyReport aw_verify(const TripleRealization& t, double tol) {
  const ParamSet& p = t.params;
  const Cplx q = p.q, r0 = p.r0;
  const int n = p.dim();
  VerifyReport rep;
  rep.suite = "askey-wilson";
  rep.paramsHash = params_hash(p.canonical());
  auto commq = [&](const Mat& X, const Mat& Y, Cplx qq) { return qq * X * Y - (Cplx(1) / qq) * Y * X; };
  const Label labs[3] = {Label::A, Label::AStar, Label::ADiam};
  for (Label a : labs) {
    for (Label b : labs) {
      if (a == b) continue;
      Label c = remaining(a, b);
      Mat lhs = commq(t.op(a), commq(t.op(a), t.op(b), q), Cplx(1) / q);
      Cplx rho = -std::pow(q * q - Cplx(1) / (q * q), 2) / (r0 * r0);
      Mat rhs = rho * t.op(b) + p.omega(a, b, c) * t.op(a) +
                (q + Cplx(1) / q) / r0 * p.omega(a, c, b) * Mat::Identity(n, n);
      double scale = std::max({lhs.norm(), rhs.norm(), 1e-300});
      rep.add(std::string("aw[") + label_name(a) + "," + label_name(b) + "]",
              (lhs - rhs).norm() / scale, tol);
    }
  }
  for (Label a : labs) {
    Label b = succ(a), c = succ(b);
    Mat lhs = r0 / (q * q - Cplx(1) / (q * q)) * commq(t.op(b), t.op(a), q) - t.op(c) +
              r0 * p.omega(a, b, c) / ((q - Cplx(1) / q) * (q * q - Cplx(1) / (q * q))) *
                  Mat::Identity(n, n);
    rep.add(std::string("z3[") + label_name(a) + "]",
            lhs.norm() / std::max(t.op(c).norm(), 1e-300), tol);
  }
  return rep;
}

TransitionSet transition_set(const TripleRealization& t) {
  const ParamSet& p = t.params;
  const int n = p.dim();
  TransitionSet ts;
  ts.ladders = t.ladders;
  auto fill = [&](Label a, Label b, Label c) {
    Mat P(n, n), Pi(n, n);
    Cplx n0 = nu0_coeff(p, a, b, c);
    for (int N = 0; N < n; ++N) {
      Cplx kN = k_coeff(p, a, b, c, N);
      for (int M = 0; M < n; ++M) {
        Cplx R = racah_eval(p, a, c, M, N);
        P(M, N) = kN * R;
        Pi(N, M) = k_coeff(p, b, a, c, M) * R / n0;
      }
    }
    return std::make_pair(P, Pi);
  };
  std::tie(ts.P_AAStar, ts.P_AAStar_inv) = fill(Label::A, Label::AStar, Label::ADiam);
  std::tie(ts.P_AStarADiam, ts.P_AStarADiam_inv) = fill(Label::AStar, Label::ADiam, Label::A);
  std::tie(ts.P_ADiamA, ts.P_ADiamA_inv) = fill(Label::ADiam, Label::A, Label::AStar);
  return ts;
}

Cplx pdinv_entry(const ParamSet& p, int M, int Mp) {
  return k_coeff(p, Label::A, Label::ADiam, Label::AStar, Mp) *
         racah_eval(p, Label::ADiam, Label::AStar, Mp, M) /
         nu0_coeff(p, Label::ADiam, Label::A, Label::AStar);
}

}  // namespace leonard
