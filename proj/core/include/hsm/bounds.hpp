#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hsm {

// Principal branch W_0 of the Lambert W function, x >= -1/e. Halley
// iteration from a branch-point, series or log x - log log x seed.
double lambert_w0(double x);

// W_0(exp(log_x)) without forming exp(log_x); valid for any finite log_x.
double lambert_w0_from_log(double log_x);

// log of lambda * exp(-W(lambda 2^d exp(2 lambda 3^{d/2}))) from log lambda.
double theorem1_log_bound(int d, double log_lambda);

// Finite-d density lower bound lambda e^{-z*},
// z* = W(lambda 2^d e^{2 lambda 3^{d/2}}).
double theorem1_bound(int d, double lambda);

// lambda = 3^{-d/2} / d, returned as its logarithm.
double proof_log_lambda(int d);

// Log of max over lambda' <= lambda of theorem1_bound(d, lambda'). Valid as
// a density bound because the expected density increases with lambda.
double theorem1_monotone_log_bound(int d, double log_lambda);
// log lambda at which theorem1_bound(d, .) peaks.
double theorem1_argmax_log_lambda(int d);

// log(2 / sqrt 3).
double log_two_over_root_three();

// Main term log(2/sqrt3) d / 2^d.
double asymptotic_alpha(int d);
double asymptotic_log_alpha(int d);

struct GeneralCBound {
  double log_finite = 0.0;      // log theorem1_bound(d, e^{-cd})
  double log_asymptotic = 0.0;  // log((log 2 - c) d / 2^d)
  double ratio() const;
};
// c in (log3 / 2, log 2).
GeneralCBound general_c_bound(int d, double c);

struct PressureBound {
  double main_term = 0.0;  // (log2 - c)^2 / 2 * d^2 / 2^d
  double finite = 0.0;     // d * integral_c^{log2} theorem1_bound(d, e^{-ud}) du
  double ratio() const { return main_term > 0.0 ? finite / main_term : 0.0; }
};
// c in [log3 / 2, log 2). Trapezoid rule on `nodes` points.
PressureBound pressure_bound(int d, double c, int nodes = 1000);

struct EntropyBound {
  double alpha = 0.0;  // log(2/sqrt3) d / 2^d
  double value = 0.0;  // -log(2/sqrt3) d
  bool main_term_only = true;
};
EntropyBound entropy_bound(int d);

struct CellModelBound {
  double value = 0.0;    // d log eps - 1
  double density = 0.0;  // c1 (1 - eps)^d d / 2^d
};
CellModelBound cell_model_bound(int d, double c1, double c2, double eps);

enum class CurveKind {
  kAlphaLower,
  kPressureLower,
  kEntropyLower,
  kCellModel,
  kAsymptoticAlpha
};
const char* to_string(CurveKind kind);

struct CurvePoint {
  int d = 0;
  double parameter = 0.0;
  double value = 0.0;
};

struct BoundCurve {
  CurveKind kind = CurveKind::kAlphaLower;
  bool main_term_only = false;
  std::vector<CurvePoint> points;
};

// CSV with header d,parameter,value,kind,main_term_only.
void write_curve_csv(std::ostream& out, const std::vector<BoundCurve>& curves);
// Two whitespace-separated columns: (c, value) for pressure curves with a
// blank-line-separated block per d, (d, value) otherwise.
void write_curve_gnuplot(std::ostream& out, const BoundCurve& curve);

}  // namespace hsm
