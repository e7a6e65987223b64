#pragma once

// Structured residual reports shared by the verification entry points.

#include <string>
#include <vector>

#include "leonard/types.hpp"

namespace leonard {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::string paramsHash;
  std::vector<CheckResult> checks;
  double runtimeSeconds = 0.0;

  void add(const std::string& name, double residual, double tol) {
    checks.push_back({name, residual, tol, residual < tol});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
  }
};

// FNV-1a over the canonical parameter text.
std::string params_hash(const std::string& canonical);

std::string report_to_json(const VerifyReport& r);
std::string report_to_csv(const VerifyReport& r);
std::string report_to_pretty(const VerifyReport& r);

}  // namespace leonard
