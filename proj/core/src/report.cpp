#include "hsm/report.hpp"

#include <cmath>
#include <limits>

namespace hsm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double sigmas(double margin, double stderr_combined) {
  if (stderr_combined > 0.0) return margin / stderr_combined;
  if (margin == 0.0) return 0.0;
  return margin > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
}

namespace {

nlohmann::json number(double x) {
  // JSON has no infinities; clamp to the largest finite double.
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? std::numeric_limits<double>::max()
               : std::numeric_limits<double>::lowest();
}

}  // namespace

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["check"] = name;
  j["lhs"] = number(lhs);
  j["rhs"] = number(rhs);
  j["stderr_lhs"] = number(stderr_lhs);
  j["stderr_rhs"] = number(stderr_rhs);
  j["verdict"] = to_string(verdict);
  j["margin_sigmas"] = number(margin_sigmas);
  if (!details.empty()) j["details"] = details;
  return j;
}

}  // namespace hsm
