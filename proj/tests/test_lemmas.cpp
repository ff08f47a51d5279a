#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsharp/constants.hpp"
#include "rsharp/error.hpp"
#include "rsharp/lemmas.hpp"

using namespace rsharp;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an rsharp::Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("sine ratio lower bound: endpoint equality") {
  CHECK(std::fabs(sine_ratio_lower_margin(pi / 2.0, 2.0)) < 1e-14);
  CHECK(std::fabs(sine_ratio_lower_margin(pi / 4.0, 4.0)) < 1e-14);
  for (double p : {4.0, 5.0, 6.0, 8.0}) {
    const LemmaCheckResult r = check_sine_ratio_lower(p, 20000);
    CAPTURE(p);
    CHECK(r.passed);
    CHECK(std::fabs(r.endpoint_margin) <= 1e-8);
  }
}

TEST_CASE("sine ratio lower bound fails for 2 < p < 4 near t = 0") {
  // sin(tp/2)/sin t -> p/2 while the right side tends to E_p, and p/2 < E_p here.
  for (double p : {2.5, 3.0}) {
    const double E = 1.0 / (std::sin(pi / p) * std::pow(std::cos(pi / p), 0.5 * p - 1.0));
    CHECK(0.5 * p < E);
    const LemmaCheckResult r = check_sine_ratio_lower(p, 20000);
    CHECK_FALSE(r.passed);
    CHECK(r.min_margin == doctest::Approx(0.5 * p - E).epsilon(1e-6));
    CHECK_FALSE(r.note.empty());
  }
}

TEST_CASE("sine ratio monotonicity") {
  CHECK(check_sine_ratio_monotone(1.0, 2.0).passed);
  CHECK(check_sine_ratio_monotone(0.5, 1.5).passed);
  CHECK(check_sine_ratio_monotone(1.0, 8.0).passed);
  CHECK(kind_of([] { check_sine_ratio_monotone(2.0, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("hyperbolic threshold") {
  CHECK(check_hyperbolic_threshold(4.0, critical_order(4.0)).passed);
  CHECK(check_hyperbolic_threshold(6.0, 20.0).passed);
  CHECK(check_hyperbolic_threshold(8.0, 30.0).passed);
  CHECK(check_hyperbolic_threshold(6.0, 20.0).min_margin > 0.0);
  // s = 12 lies below csc^2(pi/12) ~ 14.93
  CHECK(kind_of([] { check_hyperbolic_threshold(6.0, 12.0); }) == ErrorKind::ParameterMismatch);
  CHECK(kind_of([] { check_hyperbolic_threshold(3.0, 4.0); }) == ErrorKind::Domain);
}

TEST_CASE("cosh x cos x <= 1") {
  const LemmaCheckResult r = check_cosh_cos(20000);
  CHECK(r.passed);
  CHECK(r.min_margin >= 0.0);
}

TEST_CASE("G function") {
  CHECK(G_function(1.0, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(G_function(0.0, 3.0, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(G_function(1e-7, 5.0, 7.0) == doctest::Approx(3.5).epsilon(1e-9));
  CHECK(G_function(2.0, 3.0, 4.0) < 2.0);
  for (double p : {2.5, 3.0, 4.0, 6.0, 8.0})
    CHECK(check_G_bounds(p, critical_order(p), GBoundMode::CriticalBound).passed);
  for (auto [p, s] : {std::pair{4.0, 10.0}, std::pair{6.0, 20.0}, std::pair{5.0, 30.0}}) {
    CAPTURE(p);
    CHECK(check_G_bounds(p, s, GBoundMode::SupercriticalUpper).passed);
    CHECK(check_G_bounds(p, s, GBoundMode::SupercriticalLower).passed);
  }
  CHECK(kind_of([] { check_G_bounds(3.0, 5.0, GBoundMode::CriticalBound); }) == ErrorKind::ParameterMismatch);
}

TEST_CASE("series coefficients and sign pattern") {
  CHECK(series_coefficient_a(1, 2.0, 2.0).sign == 0);
  CHECK(series_coefficient_a(1, 4.0, 4.0).sign == 0);
  for (auto [p, s] : {std::pair{6.0, critical_order(6.0)}, std::pair{8.0, 40.0}, std::pair{5.0, 30.0},
                      std::pair{3.0, 4.0}, std::pair{4.0, critical_order(4.0)}}) {
    CAPTURE(p);
    CHECK(check_sign_pattern(p, s).passed);
  }
  CHECK(kind_of([] { series_coefficient_a(0, 3.0, 4.0); }) == ErrorKind::Domain);
}

TEST_CASE("phi curve, y_p and y'") {
  CHECK(kind_of([] { PhiCurve(2.0, 2.0); }) == ErrorKind::DegenerateExponent);
  for (double p : {2.5, 3.0, 4.0, 6.0, 8.0}) CHECK(check_phi_monotone(p, critical_order(p)).passed);
  CHECK(check_phi_monotone(1.25, critical_order(1.25)).passed);

  const PhiCurve phi(6.0, 20.0);
  double prev = -1.0;
  for (double t : {pi / 6.0, 0.45, 0.3, 0.1, 0.0}) {
    const ImplicitCurveSample smp = solve_y_p(t, phi);
    CHECK(std::fabs(smp.residual) <= 1e-10);
    CHECK(smp.y_p > prev);  // y_p grows as t decreases
    prev = smp.y_p;
  }
  CHECK(solve_y_p(pi / 6.0, phi).y_p == doctest::Approx(phi.y_tilde()).epsilon(1e-8));

  for (auto [p, s] : {std::pair{4.0, 10.0}, std::pair{6.0, 20.0}, std::pair{5.0, 30.0}}) {
    const double yp = y_prime(p, s);
    CHECK(phi_curve(yp, p, s) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(yp > PhiCurve(p, s).y_tilde());
  }
}

TEST_CASE("descent along y_p") {
  for (auto [p, s] : {std::pair{4.0, 10.0}, std::pair{6.0, 20.0}, std::pair{3.0, 8.0}, std::pair{8.0, 40.0}}) {
    CAPTURE(p);
    CHECK(check_descent(p, s, 2000).passed);
  }
  CHECK(kind_of([] { check_descent(3.0, 2.0, 100); }) == ErrorKind::ParameterMismatch);
}

TEST_CASE("range 1 < p < 2") {
  CHECK(lemma7_c_p(4.0 / 3.0) == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-14));
  for (double p : {1.1, 1.2, 1.25, 4.0 / 3.0}) {
    CAPTURE(p);
    const LemmaCheckResult up = check_sine_ratio_upper(p, 4000);
    CHECK(up.passed);
    CHECK(std::fabs(up.endpoint_margin) <= 1e-8);
    const LemmaCheckResult psi = psi_suite(p, 4000);
    CHECK(psi.passed);
    CHECK(std::fabs(psi.endpoint_margin) <= 1e-8);
  }
  CHECK(kind_of([] { psi_suite(1.5, 100); }) == ErrorKind::Domain);
}

TEST_CASE("falsification beyond the cutoffs") {
  const LemmaCheckResult lt = falsify_beyond_cutoff(1.5, critical_order(1.5));
  CHECK(lt.falsification);
  CHECK_FALSE(lt.passed);
  CHECK(lt.succeeded());
  CHECK(lt.min_margin < -1e-6);

  const LemmaCheckResult sc = falsify_beyond_cutoff(3.0, 8.0);
  CHECK(sc.succeeded());
  CHECK(sc.min_margin < -1e-3);

  CHECK(kind_of([] { falsify_beyond_cutoff(1.2, critical_order(1.2)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { falsify_beyond_cutoff(3.0, 4.0); }) == ErrorKind::Domain);
}
