#include "leonard/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace leonard {

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string matrix_to_csv(const Mat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << fmt(m(i, j).real()) << ',' << fmt(m(i, j).imag());
    }
    os << '\n';
  }
  return os.str();
}

void write_matrix_csv(const std::string& path, const Mat& m) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << matrix_to_csv(m);
}

static nlohmann::ordered_json rootset_json(const BetheRootSet& rs) {
  nlohmann::ordered_json j;
  j["kind"] = rs.kind == BetheKind::Homogeneous ? "homogeneous" : "inhomogeneous";
  j["epsilon"] = rs.epsilon;
  j["level"] = rs.level;
  j["U"] = nlohmann::ordered_json::array();
  for (Cplx u : rs.symRoots) j["U"].push_back({u.real(), u.imag()});
  j["residuals"] = rs.residuals;
  return j;
}

std::string rootset_to_json(const BetheRootSet& rs) { return rootset_json(rs).dump(2) + "\n"; }

std::string rootsets_to_json(const std::vector<BetheRootSet>& sets) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& rs : sets) j.push_back(rootset_json(rs));
  return j.dump(2) + "\n";
}

std::string rootsets_to_csv(const std::vector<BetheRootSet>& sets) {
  std::ostringstream os;
  os << "kind,epsilon,level,index,U_re,U_im,residual\n";
  for (const auto& rs : sets) {
    for (size_t i = 0; i < rs.symRoots.size(); ++i) {
      os << (rs.kind == BetheKind::Homogeneous ? "homogeneous" : "inhomogeneous") << ','
         << rs.epsilon << ',' << rs.level << ',' << i << ',' << fmt(rs.symRoots[i].real())
         << ',' << fmt(rs.symRoots[i].imag()) << ',' << fmt(rs.residuals[i]) << '\n';
    }
    if (rs.symRoots.empty())
      os << (rs.kind == BetheKind::Homogeneous ? "homogeneous" : "inhomogeneous") << ','
         << rs.epsilon << ',' << rs.level << ",,,,\n";
  }
  return os.str();
}

}  // namespace leonard
