#include "leonard/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace leonard {

std::string params_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params_hash"] = r.paramsHash;
  j["pass"] = r.all_pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    j["checks"].push_back(jc);
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "suite,params_hash,name,residual,tolerance,pass\n";
  for (const auto& c : r.checks)
    os << r.suite << ',' << r.paramsHash << ',' << c.name << ',' << fmt(c.residual) << ','
       << fmt(c.tolerance) << ',' << (c.pass ? 1 : 0) << '\n';
  return os.str();
}

std::string report_to_pretty(const VerifyReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << "  (params " << r.paramsHash << ")\n";
  if (r.runtimeSeconds > 0) {
    char rbuf[48];
    std::snprintf(rbuf, sizeof rbuf, "runtime %.2f s\n", r.runtimeSeconds);
    os << rbuf;
  }
  for (const auto& c : r.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-44s %-4s  resid %.3e  (tol %.1e)\n", c.name.c_str(),
                  c.pass ? "ok" : "FAIL", c.residual, c.tolerance);
    os << buf;
  }
  os << (r.all_pass() ? "all checks passed" : "FAILURES present") << "\n";
  return os.str();
}

}  // namespace leonard
