#include "leonard/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "leonard/qcalc.hpp"

namespace leonard {

Cplx ParamSet::theta(Label l, int M) const {
  return bpar(l) * std::pow(q, 2 * M) + cpar(l) * std::pow(q, -2 * M);
}

Cplx ParamSet::zeta() const {
  return std::sqrt(cpar(Label::ADiam) * r0 * std::pow(q, -twoS));
}

Cplx ParamSet::omega(Label a, Label b, Label c) const {
  // theta^x_s with the spin index s, i.e. q^(2s) = q^twoS
  auto ths = [&](Label l) { return bpar(l) * std::pow(q, twoS) + cpar(l) * std::pow(q, -twoS); };
  Cplx d = q - Cplx(1) / q;
  return -d * d * (ths(a) * ths(b) -
                   (Cplx(1) / r0) * (std::pow(q, twoS + 1) + std::pow(q, -twoS - 1)) * ths(c));
}

Cplx ParamSet::rho() const {
  Cplx d = q * q - Cplx(1) / (q * q);
  return -d * d / (r0 * r0);
}
Cplx ParamSet::eta() const {
  return (q + Cplx(1) / q) / r0 * omega(Label::A, Label::ADiam, Label::AStar);
}
Cplx ParamSet::etaStar() const {
  return (q + Cplx(1) / q) / r0 * omega(Label::AStar, Label::ADiam, Label::A);
}

void ParamSet::validate(double rtol) const {
  if (twoS < 1) throw DegenerateParams("spin: need 2s+1 >= 2");
  if (q == Cplx(0)) throw DegenerateParams("q = 0");
  if (r0 == Cplx(0)) throw DegenerateParams("r0 = 0");
  for (Label l : {Label::A, Label::AStar, Label::ADiam})
    if (bpar(l) == Cplx(0)) throw DegenerateParams(std::string("vanishing b-parameter of ") + label_name(l));
  // no root of unity at orders 1..4s (covers q = ±1)
  for (int M = 1; M <= 2 * twoS; ++M) {
    if (std::abs(std::pow(q, 2 * M) - Cplx(1)) < rtol)
      throw DegenerateParams("q^(2M) = 1 at M = " + std::to_string(M));
  }
  const Label labs[3] = {Label::A, Label::AStar, Label::ADiam};
  // condition (i): b^a / c^a != q^(-2M), 1 <= M <= 4s-1  (spectra multiplicity-free)
  for (Label l : labs) {
    Cplx ratio = bpar(l) / cpar(l);
    for (int M = 1; M <= 2 * twoS - 1; ++M) {
      Cplx ref = std::pow(q, -2 * M);
      if (std::abs(ratio - ref) < rtol * std::abs(ref))
        throw DegenerateParams(std::string("condition (i) violated for ") + label_name(l) +
                               " at M = " + std::to_string(M));
    }
  }
  // condition (ii): irreducibility denominators, checked for every cyclic
  // assignment (a,b,c)
  for (Label a : labs) {
    Label b = succ(a), c = succ(b);
    const Cplx pa = bpar(a), ca = cpar(a);
    const Cplx pb = bpar(b), cb = cpar(b);
    const Cplx pc = bpar(c), cc = cpar(c);
    for (int M = 1; M <= twoS; ++M) {
      struct Chk { Cplx lhs, rhs; const char* what; };
      const Chk chks[4] = {
          {cb, -r0 * std::pow(q, -2 * M + 1) * ca * cc, "c^b = -r0 q^(1-2M) c^a c^c"},
          {pa, -r0 * std::pow(q, -2 * M + 1 + 2 * twoS) * pb * pc, "b^a = -r0 q^(1-2M+4s) b^b b^c"},
          {ca, -r0 * std::pow(q, 2 * M + 2 * twoS - 1) * pb * pc, "c^a = -r0 q^(2M+4s-1) b^b b^c"},
          {cb, -r0 * std::pow(q, 2 * M - 1) * pa * cc, "c^b = -r0 q^(2M-1) b^a c^c"},
      };
      for (const auto& kk : chks) {
        if (std::abs(kk.lhs - kk.rhs) < rtol * std::max(std::abs(kk.lhs), std::abs(kk.rhs)))
          throw DegenerateParams(std::string("condition (ii) violated (") + kk.what +
                                 ") for cyclic start " + label_name(a) + ", M = " + std::to_string(M));
      }
    }
  }
}

std::string format_complex(Cplx z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

std::string ParamSet::canonical() const {
  std::ostringstream os;
  os << "q = " << format_complex(q) << "\nr0 = " << format_complex(r0)
     << "\nb = " << format_complex(b) << "\nbstar = " << format_complex(bStar)
     << "\nbdiam = " << format_complex(bDiam) << "\ns = " << twoS << "/2\n";
  return os.str();
}

Cplx parse_complex(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ConfigError("empty complex literal");
  // forms: "a", "a+bi", "a-bi", "bi"
  bool has_i = t.back() == 'i' || t.back() == 'I';
  if (!has_i) {
    try {
      size_t pos = 0;
      double re = std::stod(t, &pos);
      if (pos != t.size()) throw ConfigError("bad complex literal: " + s);
      return Cplx(re, 0.0);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bad complex literal: " + s);
    }
  }
  t.pop_back();
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      if (t.empty() || t == "+" || t == "-") return Cplx(0.0, t == "-" ? -1.0 : 1.0);
      return Cplx(0.0, std::stod(t));
    }
    double re = std::stod(t.substr(0, split));
    std::string im = t.substr(split);
    if (im == "+") return Cplx(re, 1.0);
    if (im == "-") return Cplx(re, -1.0);
    return Cplx(re, std::stod(im));
  } catch (const std::exception&) {
    throw ConfigError("bad complex literal: " + s);
  }
}

static int parse_spin(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  try {
    auto slash = t.find('/');
    if (slash != std::string::npos) {
      int num = std::stoi(t.substr(0, slash));
      int den = std::stoi(t.substr(slash + 1));
      if (den != 2 || num <= 0) throw ConfigError("spin must be a positive half-integer: " + s);
      return num;
    }
    double v = std::stod(t);
    double twice = 2.0 * v;
    int tw = static_cast<int>(std::lround(twice));
    if (std::abs(twice - tw) > 1e-9 || tw <= 0)
      throw ConfigError("spin must be a positive half-integer: " + s);
    return tw;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad spin value: " + s);
  }
}

ParamSet parse_params(const std::string& text) {
  ParamSet p;
  bool got_q = false, got_r0 = false, got_b = false, got_bs = false, got_bd = false, got_s = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key;
    for (char ch : line.substr(0, eq))
      if (!std::isspace(static_cast<unsigned char>(ch))) key += std::tolower(ch);
    std::string val = line.substr(eq + 1);
    try {
      if (key == "q") { p.q = parse_complex(val); got_q = true; }
      else if (key == "r0") { p.r0 = parse_complex(val); got_r0 = true; }
      else if (key == "b") { p.b = parse_complex(val); got_b = true; }
      else if (key == "bstar") { p.bStar = parse_complex(val); got_bs = true; }
      else if (key == "bdiam") { p.bDiam = parse_complex(val); got_bd = true; }
      else if (key == "s") { p.twoS = parse_spin(val); got_s = true; }
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!(got_q && got_r0 && got_b && got_bs && got_bd && got_s))
    throw ConfigError("missing keys; need q, r0, b, bstar, bdiam, s");
  return p;
}

ParamSet load_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open parameter file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_params(ss.str());
}

}  // namespace leonard
