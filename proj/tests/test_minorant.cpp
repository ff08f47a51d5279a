#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rsharp/constants.hpp"
#include "rsharp/error.hpp"
#include "rsharp/minorant.hpp"

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

TEST_CASE("v_2 is cos 2t and U is homogeneous") {
  for (double t = -3.0; t <= 3.0; t += 0.37) CHECK(v_p(t, 2.0) == doctest::Approx(std::cos(2.0 * t)).epsilon(1e-13));
  const cplx z = std::polar(0.7, 1.1);
  CHECK(minorant_U(2.0 * z, 3.0) == doctest::Approx(8.0 * minorant_U(z, 3.0)));
  CHECK(minorant_E(z, cplx{}, 3.0) == 0.0);
  CHECK(kind_of([] { v_p(0.0, 1.5); }) == ErrorKind::Domain);
}

TEST_CASE("sub-mean-value property of U") {
  for (double p : {2.0, 3.0, 4.0, 6.0}) {
    const VerificationReport r = subharmonic_mean_check(p, 400, 0.5);
    CAPTURE(p);
    CHECK(r.passed());
  }
  // centre on the ray where v_p switches formulas
  const VerificationReport pinned = subharmonic_mean_check(4.0, 50, 0.3, 1, std::polar(1.0, pi / 2 - pi / 4));
  CHECK(pinned.passed());
}

TEST_CASE("master function at p = 2 vanishes identically") {
  const MasterContext ctx = MasterContext::make(MasterBranch::CriticalGe2, 2.0, 2.0);
  for (double y : {0.0, 0.5, 3.0})
    for (double t : {0.1, 1.0, 3.0}) CHECK(std::fabs(phi_master(y, t, ctx)) < 1e-12);
}

TEST_CASE("reduction from the two-variable margin") {
  const std::tuple<MasterBranch, double, double> cases[] = {
      {MasterBranch::CriticalGe2, 3.0, critical_order(3.0)},
      {MasterBranch::SupercriticalGe2, 4.0, 10.0},
      {MasterBranch::CriticalLt2, 1.25, critical_order(1.25)}};
  for (auto [b, p, s] : cases) {
    const MasterContext ctx = MasterContext::make(b, p, s);
    for (double y : {0.0, 0.2, 1.7, 6.0})
      for (double t : {0.05, 0.5, ctx.t_hi * 0.9}) {
        const double d = phi_master(y, t, ctx);
        const double v = reduced_margin(y, t, ctx);
        CHECK(std::fabs(d - v) <= 1e-9 * std::max(1.0, std::fabs(d)));
      }
  }
}

TEST_CASE("zero of the master function") {
  const double p = 3.0;
  const MasterContext ctx = MasterContext::make(MasterBranch::CriticalGe2, p, critical_order(p));
  CHECK(std::fabs(phi_master(0.0, pi / p, ctx)) < 1e-12);
  const GridSpec g = default_grid(MasterBranch::CriticalGe2, p, 200, 200);
  const ZeroLocation z = locate_zero(MasterBranch::CriticalGe2, ExponentPair::make(p, critical_order(p)), g);
  CHECK(z.unique());
  const ZeroLocation s = locate_zero(MasterBranch::SupercriticalGe2, ExponentPair::make(4.0, 10.0),
                                     default_grid(MasterBranch::SupercriticalGe2, 4.0, 200, 200));
  CHECK(s.y0 > 0.0);
  CHECK(s.unique());
}

TEST_CASE("grid verification on coarse grids") {
  CHECK(verify_region(MasterBranch::CriticalGe2, ExponentPair::make(4.0, critical_order(4.0)),
                      default_grid(MasterBranch::CriticalGe2, 4.0, 300, 300))
            .passed());
  CHECK(verify_region(MasterBranch::SupercriticalGe2, ExponentPair::make(6.0, 20.0),
                      default_grid(MasterBranch::SupercriticalGe2, 6.0, 300, 300))
            .passed());
  CHECK(verify_region(MasterBranch::CriticalLt2, ExponentPair::make(1.1, critical_order(1.1)),
                      default_grid(MasterBranch::CriticalLt2, 1.1, 300, 300))
            .passed());
}

TEST_CASE("whole-plane spot checks") {
  CHECK(spot_check_plane(MasterBranch::CriticalGe2, ExponentPair::make(3.0, 4.0), 5000).passed());
  CHECK(spot_check_plane(MasterBranch::SupercriticalGe2, ExponentPair::make(3.0, 8.0), 5000).passed());
  CHECK(spot_check_plane(MasterBranch::CriticalLt2, ExponentPair::make(4.0 / 3.0, critical_order(4.0 / 3.0)), 5000)
            .passed());
}

TEST_CASE("elementary margin below the cutoff") {
  const MasterContext ctx = MasterContext::make_for_margin(MasterBranch::CriticalGe2, 4.0, 2.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 2000; ++k) {
    const cplx z(u(rng), u(rng)), w(u(rng), u(rng));
    const double scale = std::pow(std::max(std::abs(z), std::abs(w)), 4.0);
    CHECK(elementary_margin(z, w, ctx) >= -1e-9 * scale);
  }
}

TEST_CASE("parameter and budget errors") {
  CHECK(kind_of([] { MasterContext::make(MasterBranch::CriticalGe2, 3.0, 5.0); }) == ErrorKind::ParameterMismatch);
  CHECK(kind_of([] { MasterContext::make(MasterBranch::SupercriticalGe2, 3.0, 3.0); }) ==
        ErrorKind::ParameterMismatch);
  CHECK(kind_of([] { MasterContext::make(MasterBranch::CriticalLt2, 1.5, 2.0); }) == ErrorKind::ParameterMismatch);
  GridSpec big = default_grid(MasterBranch::CriticalGe2, 3.0, 20000, 20000);
  CHECK(kind_of([&] { big.validate(); }) == ErrorKind::CellBudget);
  GridSpec bad = default_grid(MasterBranch::CriticalGe2, 3.0, 1, 10);
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::Domain);
}
