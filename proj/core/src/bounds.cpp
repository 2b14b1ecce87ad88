#include "hsm/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace hsm {
namespace {

constexpr double kInvE = 0.36787944117144233;

void require_dimension(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) return x;
  if (x < -kInvE) {
    // Allow the rounding of -1/e itself.
    if (x < -kInvE - 1e-15) throw std::domain_error("lambert_w0: x < -1/e");
    return -1.0;
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.32) {
    // Branch-point expansion in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  } else if (x < 3.0) {
    w = x < 0.5 ? x * (1.0 - x) : std::log1p(x) * 0.75;
  } else {
    const double l = std::log(x);
    const double ll = std::log(l);
    w = l - ll + ll / l;
  }

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_w0_from_log(double log_x) {
  if (std::isnan(log_x)) return log_x;
  if (log_x < 1.0) return lambert_w0(std::exp(log_x));
  // Solve w + log w = log_x for w >= 1 by Halley's method.
  const double ll = std::log(log_x);
  double w = log_x - ll + ll / log_x;
  for (int i = 0; i < 64; ++i) {
    const double f = w + std::log(w) - log_x;
    const double f1 = 1.0 + 1.0 / w;
    const double f2 = -1.0 / (w * w);
    const double step = f / (f1 - 0.5 * f * f2 / f1);
    w -= step;
    if (std::abs(step) <= 1e-16 * w) break;
  }
  return w;
}

double theorem1_log_bound(int d, double log_lambda) {
  require_dimension(d);
  // log of 2 lambda 3^{d/2}
  const double log_penalty =
      log_lambda + std::numbers::ln2 + 0.5 * d * std::log(3.0);
  const double log_x = log_lambda + d * std::numbers::ln2 + std::exp(log_penalty);
  return log_lambda - lambert_w0_from_log(log_x);
}

double theorem1_bound(int d, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return std::exp(theorem1_log_bound(d, std::log(lambda)));
}

double proof_log_lambda(int d) {
  require_dimension(d);
  return -std::log(static_cast<double>(d)) - 0.5 * d * std::log(3.0);
}

double theorem1_argmax_log_lambda(int d) {
  require_dimension(d);
  // The bound is unimodal in log lambda: rising like lambda for small
  // lambda, crushed by the e^{2 lambda 3^{d/2}} penalty for large. The peak
  // sits where 2 lambda 3^{d/2} is O(1).
  const double centre = -0.5 * d * std::log(3.0);
  double lo = centre - 40.0;
  double hi = centre + 10.0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  double fa = theorem1_log_bound(d, a);
  double fb = theorem1_log_bound(d, b);
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + std::abs(centre)); ++i) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = theorem1_log_bound(d, b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = theorem1_log_bound(d, a);
    }
  }
  return 0.5 * (lo + hi);
}

double theorem1_monotone_log_bound(int d, double log_lambda) {
  const double peak = theorem1_argmax_log_lambda(d);
  return theorem1_log_bound(d, std::min(log_lambda, peak));
}

double log_two_over_root_three() {
  return std::numbers::ln2 - 0.5 * std::log(3.0);
}

double asymptotic_log_alpha(int d) {
  require_dimension(d);
  return std::log(log_two_over_root_three() * d) - d * std::numbers::ln2;
}

double asymptotic_alpha(int d) { return std::exp(asymptotic_log_alpha(d)); }

double GeneralCBound::ratio() const {
  return std::exp(log_finite - log_asymptotic);
}

GeneralCBound general_c_bound(int d, double c) {
  require_dimension(d);
  const double lo = 0.5 * std::log(3.0);
  if (!(c > lo && c < std::numbers::ln2)) {
    throw std::invalid_argument("c must lie in (log3/2, log2)");
  }
  GeneralCBound b;
  b.log_finite = theorem1_log_bound(d, -c * d);
  b.log_asymptotic =
      std::log((std::numbers::ln2 - c) * d) - d * std::numbers::ln2;
  return b;
}

PressureBound pressure_bound(int d, double c, int nodes) {
  require_dimension(d);
  const double lo = 0.5 * std::log(3.0);
  if (!(c >= lo - 1e-12 && c < std::numbers::ln2)) {
    throw std::invalid_argument("c must lie in [log3/2, log2)");
  }
  if (nodes < 2) throw std::invalid_argument("need at least two nodes");
  PressureBound p;
  const double width = std::numbers::ln2 - c;
  // Work relative to d^2 / 2^d so nothing underflows at large d.
  const double log_scale = 2.0 * std::log(static_cast<double>(d)) -
                           d * std::numbers::ln2;
  p.main_term = std::exp(std::log(0.5 * width * width) + log_scale);

  const double h = width / (nodes - 1);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = c + i * h;
    const double scaled_integrand =
        std::exp(theorem1_log_bound(d, -u * d) + std::log(static_cast<double>(d)) -
                 log_scale);
    sum += (i == 0 || i == nodes - 1 ? 0.5 : 1.0) * scaled_integrand;
  }
  const double scaled_integral = sum * h;
  p.finite = scaled_integral > 0.0
                 ? std::exp(std::log(scaled_integral) + log_scale)
                 : 0.0;
  return p;
}

EntropyBound entropy_bound(int d) {
  require_dimension(d);
  EntropyBound e;
  e.alpha = asymptotic_alpha(d);
  e.value = -log_two_over_root_three() * d;
  return e;
}

CellModelBound cell_model_bound(int d, double c1, double c2, double eps) {
  require_dimension(d);
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw std::invalid_argument("c1, c2 must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  CellModelBound b;
  b.value = d * std::log(eps) - 1.0;
  b.density = std::exp(std::log(c1) + d * std::log1p(-eps) +
                       std::log(static_cast<double>(d)) - d * std::numbers::ln2);
  return b;
}

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kAlphaLower:
      return "alpha_lower";
    case CurveKind::kPressureLower:
      return "pressure_lower";
    case CurveKind::kEntropyLower:
      return "entropy_lower";
    case CurveKind::kCellModel:
      return "cell_model";
    case CurveKind::kAsymptoticAlpha:
      return "asymptotic_alpha";
  }
  return "unknown";
}

void write_curve_csv(std::ostream& out, const std::vector<BoundCurve>& curves) {
  const auto old = out.precision(17);
  out << "d,parameter,value,kind,main_term_only\n";
  for (const BoundCurve& c : curves) {
    for (const CurvePoint& p : c.points) {
      out << p.d << ',' << p.parameter << ',' << p.value << ','
          << to_string(c.kind) << ',' << (c.main_term_only ? "true" : "false")
          << '\n';
    }
  }
  out.precision(old);
}

void write_curve_gnuplot(std::ostream& out, const BoundCurve& curve) {
  // Pressure curves are indexed by c, one block per d; the rest by d.
  const bool by_parameter = curve.kind == CurveKind::kPressureLower;
  const auto old = out.precision(17);
  out << "# " << to_string(curve.kind) << ": "
      << (by_parameter ? "c" : "d") << " value\n";
  int last_d = curve.points.empty() ? 0 : curve.points.front().d;
  for (const CurvePoint& p : curve.points) {
    if (by_parameter && p.d != last_d) out << "\n\n";
    last_d = p.d;
    if (by_parameter) {
      out << p.parameter << ' ' << p.value << '\n';
    } else {
      out << p.d << ' ' << p.value << '\n';
    }
  }
  out.precision(old);
}

}  // namespace hsm
