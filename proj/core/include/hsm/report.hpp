#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace hsm {

enum class Verdict { kPass, kFail, kInconclusive };

const char* to_string(Verdict v);

// Outcome of a numerical check. Serializes as
// {lhs, rhs, stderr_lhs, stderr_rhs, verdict, margin_sigmas} plus any
// check-specific fields under "details".
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_lhs = 0.0;
  double stderr_rhs = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  double margin_sigmas = 0.0;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return verdict == Verdict::kPass; }
  nlohmann::json to_json() const;
};

// margin in units of the combined standard error; +inf when the error is
// zero and the margin positive.
double sigmas(double margin, double stderr_combined);

}  // namespace hsm
