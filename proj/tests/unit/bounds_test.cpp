#include "hsm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

using namespace hsm;

namespace {

double residual(double x) {
  const double w = lambert_w0(x);
  return std::abs(w * std::exp(w) - x);
}

double ratio_at_proof_lambda(int d) {
  return std::exp(theorem1_log_bound(d, proof_log_lambda(d)) -
                  asymptotic_log_alpha(d));
}

}  // namespace

TEST_CASE("Lambert W") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(residual(1e6) <= 1e-12 * 1e6);
  CHECK_THROWS_AS(lambert_w0(-0.5), std::domain_error);

  SUBCASE("residual over a log grid") {
    for (double lx = -6.0; lx <= 12.0; lx += 0.01) {
      const double x = std::pow(10.0, lx);
      REQUIRE(residual(x) <= 1e-11 * (1.0 + x));
    }
  }
  SUBCASE("negative branch region") {
    for (double x = -0.3678; x < 0.0; x += 0.001) {
      REQUIRE(residual(x) <= 1e-13);
    }
  }
  SUBCASE("log-argument form agrees") {
    for (double lx = -20.0; lx <= 25.0; lx += 0.5) {
      CHECK(lambert_w0_from_log(lx) ==
            doctest::Approx(lambert_w0(std::exp(lx))).epsilon(1e-12));
    }
    const double w = lambert_w0_from_log(5000.0);
    CHECK(w + std::log(w) == doctest::Approx(5000.0).epsilon(1e-14));
  }
}

TEST_CASE("finite-dimension density bound") {
  const double z = lambert_w0(2.0 * std::exp(2.0 * std::sqrt(3.0)));
  CHECK(theorem1_bound(1, 1.0) == doctest::Approx(std::exp(-z)).epsilon(1e-13));
  CHECK(theorem1_bound(1, 1.0) == doctest::Approx(0.0476411938).epsilon(1e-9));
  CHECK(proof_log_lambda(4) == doctest::Approx(-2.0 * std::log(3.0) - std::log(4.0)));

  SUBCASE("ratio to the main term at the proof's fugacity") {
    const double r500 = ratio_at_proof_lambda(500);
    CHECK(r500 >= 0.85);
    CHECK(r500 <= 1.15);
    double prev = 0.0;
    for (int d : {100, 200, 400, 800}) {
      const double r = ratio_at_proof_lambda(d);
      CHECK(r > prev);
      CHECK(r < 1.0);
      prev = r;
    }
  }
  SUBCASE("stays finite for large d") {
    const double l = theorem1_log_bound(10000, proof_log_lambda(10000));
    CHECK(std::isfinite(l));
    CHECK(l < 0.0);
  }
  SUBCASE("unimodal in lambda, monotone envelope") {
    const int d = 20;
    const double peak = theorem1_argmax_log_lambda(d);
    const double at_peak = theorem1_log_bound(d, peak);
    for (double dl = -3.0; dl <= 3.0; dl += 0.25) {
      CHECK(theorem1_log_bound(d, peak + dl) <= at_peak + 1e-12);
    }
    double prev = -1e300;
    for (double ll = peak - 5.0; ll <= peak + 5.0; ll += 0.5) {
      const double m = theorem1_monotone_log_bound(d, ll);
      CHECK(m >= prev);
      CHECK(m >= theorem1_log_bound(d, ll) - 1e-12);
      prev = m;
    }
  }
}

TEST_CASE("constants and main terms") {
  CHECK(log_two_over_root_three() == doctest::Approx(0.14384103622589045));
  CHECK(asymptotic_alpha(1) == doctest::Approx(0.0719205181));
  CHECK(asymptotic_log_alpha(300) ==
        doctest::Approx(std::log(0.14384103622589045 * 300) - 300 * std::log(2.0)));
  CHECK(asymptotic_alpha(10) * 1024 == doctest::Approx(1.4384103622589045));
}

TEST_CASE("general c bound") {
  const double lo = 0.5 * std::log(3.0);
  const GeneralCBound b = general_c_bound(300, lo + 0.01);
  CHECK(b.ratio() >= 0.8);
  CHECK(b.ratio() <= 1.2);
  const GeneralCBound b6 = general_c_bound(400, 0.6);
  CHECK(std::isfinite(b6.log_finite));
  CHECK(std::isfinite(b6.log_asymptotic));
  const GeneralCBound near = general_c_bound(50, std::log(2.0) - 1e-9);
  CHECK(std::exp(near.log_asymptotic + 50 * std::log(2.0)) < 1e-6);
  CHECK_THROWS(general_c_bound(10, 0.5));
  CHECK_THROWS(general_c_bound(10, 0.7));
}

TEST_CASE("pressure bound") {
  const double lo = 0.5 * std::log(3.0);
  const double d = 100;
  const PressureBound p = pressure_bound(100, lo);
  CHECK(p.main_term == doctest::Approx(0.0103451 * d * d / std::pow(2.0, d)).epsilon(1e-5));
  CHECK(pressure_bound(100, std::log(2.0) - 1e-9).main_term < 1e-40);
  CHECK(pressure_bound(100, std::log(2.0) - 1e-9).finite < 1e-30);

  double prev = 0.0;
  for (int dd : {200, 400, 800}) {
    const double r = pressure_bound(dd, lo).ratio();
    CHECK(std::abs(1.0 - r) < std::abs(1.0 - prev));
    prev = r;
  }
  const double r = pressure_bound(400, 0.6).ratio();
  CHECK(r >= 0.8);
  CHECK(r <= 1.2);

  double last = 0.0;
  for (double c = 0.69; c >= lo; c -= 0.02) {
    const double f = pressure_bound(60, c).finite;
    CHECK(f > last);
    last = f;
  }
  CHECK_THROWS(pressure_bound(10, 0.5));
}

TEST_CASE("entropy and cell model") {
  const EntropyBound e1 = entropy_bound(1);
  CHECK(e1.alpha == doctest::Approx(0.0719205181));
  CHECK(e1.value == doctest::Approx(-0.1438410362));
  CHECK(e1.main_term_only);
  CHECK(entropy_bound(37).value / 37 == doctest::Approx(-0.1438410362));

  CHECK(cell_model_bound(5, 1.0, 1.0, 1.0 / std::numbers::e).value ==
        doctest::Approx(-6.0));
  CHECK(cell_model_bound(10, 2.0, 1.0, 0.5).density ==
        doctest::Approx(2.0 * std::pow(0.5, 10) * 10 / 1024.0));
  CHECK_THROWS(cell_model_bound(5, 1.0, 1.0, 1.0));
  CHECK_THROWS(cell_model_bound(5, 0.0, 1.0, 0.5));

  double prev = 0.0;
  for (int d : {10, 20, 40, 80, 160}) {
    const double gap = entropy_bound(d).value - cell_model_bound(d, 1.0, 1.0, 1.0 / d).value;
    CHECK(gap > prev);
    prev = gap;
  }
  const int big = 100000;
  CHECK(cell_model_bound(big, 1.0, 1.0, 1.0 / big).value /
            (big * std::log(static_cast<double>(big))) ==
        doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("curve output") {
  BoundCurve alpha{CurveKind::kAlphaLower, false, {{2, 0.1, 0.25}, {3, 0.1, 0.125}}};
  BoundCurve press{CurveKind::kPressureLower, true,
                   {{10, 0.6, 1.0}, {10, 0.65, 0.5}, {20, 0.6, 0.25}}};
  std::ostringstream csv;
  write_curve_csv(csv, {alpha, press});
  CHECK(csv.str() ==
        "d,parameter,value,kind,main_term_only\n"
        "2,0.10000000000000001,0.25,alpha_lower,false\n"
        "3,0.10000000000000001,0.125,alpha_lower,false\n"
        "10,0.59999999999999998,1,pressure_lower,true\n"
        "10,0.65000000000000002,0.5,pressure_lower,true\n"
        "20,0.59999999999999998,0.25,pressure_lower,true\n");
  std::ostringstream gp;
  write_curve_gnuplot(gp, press);
  CHECK(gp.str() ==
        "# pressure_lower: c value\n"
        "0.59999999999999998 1\n0.65000000000000002 0.5\n\n\n"
        "0.59999999999999998 0.25\n");
  std::ostringstream ga;
  write_curve_gnuplot(ga, alpha);
  CHECK(ga.str() == "# alpha_lower: d value\n2 0.25\n3 0.125\n");
  CHECK(std::string(to_string(CurveKind::kCellModel)) == "cell_model");
}
