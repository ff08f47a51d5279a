#include "rsharp/constants.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rsharp/error.hpp"
#include "rsharp/numerics.hpp"

namespace rsharp {

using num::pi;

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "unknown";
}

double critical_order(double p) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "critical_order requires p > 1");
  const double a = pi / (2.0 * p);
  if (p >= 2.0) {
    const double sn = std::sin(a);
    return 1.0 / (sn * sn);
  }
  const double cs = std::cos(a);
  return 1.0 / (cs * cs);
}

ExponentPair ExponentPair::make(double p, double s) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::Domain, "exponent p must be > 1");
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorKind::Domain, "order s must be > 0");
  const double star = critical_order(p);
  Regime r = Regime::Supercritical;
  if (std::fabs(s - star) <= kEpsCrit) r = Regime::Critical;
  else if (s < star) r = Regime::Subcritical;
  return ExponentPair{p, s, r};
}

namespace {

// log(cosh y -+ cos(pi/p)) with the stable half-angle forms.
double log_denominator(double y, double p, KSign sign) {
  const double c = pi / p;
  if (sign == KSign::MinusCos) return num::log_cosh_minus_cos(y, c);
  // cosh y + cos c = cosh y - cos(pi - c)
  return num::log_cosh_minus_cos(y, pi - c);
}

void require_p_ge_2(double p, const char* who) {
  if (!(p >= 2.0)) fail(ErrorKind::Domain, std::string(who) + " requires p >= 2");
}

}  // namespace

double log_K(double y, double p, double s, KSign sign) {
  if (!(y >= 0.0)) fail(ErrorKind::Domain, "K requires y >= 0");
  if (!(p > 1.0) || !(s > 0.0)) fail(ErrorKind::Domain, "K requires p > 1, s > 0");
  const double ld = log_denominator(y, p, sign);
  if (!std::isfinite(ld)) fail(ErrorKind::Domain, "K denominator is not positive");
  return (p / s) * num::logcosh(0.5 * s * y) - 0.5 * p * ld;
}

double K_value(double y, double p, double s, KSign sign) {
  return std::exp(log_K(y, p, s, sign));
}

double k_root_function(double y, double p, double s) {
  return num::sinh_ratio(0.5 * (s - 2.0), 0.5 * s, y) - std::cos(pi / p);
}

KMaximum maximize_K(double p, double s, double y_max) {
  require_p_ge_2(p, "maximize_K");
  if (!(s > 0.0)) fail(ErrorKind::Domain, "maximize_K requires s > 0");
  const double star = critical_order(p);
  if (s <= star + kEpsCrit) return KMaximum{0.0, true, K_value(0.0, p, s)};
  if (p == 2.0) {
    // K(y) = cosh^{2/s}(sy/2)/cosh y increases to its limit 2^{1-2/s}.
    return KMaximum{0.0, false, std::pow(2.0, 1.0 - 2.0 / s)};
  }
  auto r = [&](double y) { return k_root_function(y, p, s); };
  if (!(r(0.0) > 0.0))
    fail(ErrorKind::Convergence, "maximize_K: root function not positive at y = 0");
  if (r(y_max) > 0.0)
    fail(ErrorKind::Convergence, "maximize_K: no sign change of the root function on [0, y_max]");
  const double y = num::bisect(r, 0.0, y_max, 1e-13);
  return KMaximum{y, true, K_value(y, p, s)};
}

double D_constant(double p, double s, double y_max) {
  const KMaximum km = maximize_K(p, s, y_max);
  if (!km.attained) fail(ErrorKind::Domain, "D_constant: supremum of K is not attained");
  const double c = pi / p;
  return km.C * std::pow(num::cosh_minus_cos(km.y_tilde, c), 0.5 * p - 1.0) * std::sin(c);
}

double A_constant(double p, double s, double y_max) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "A_constant requires p > 1");
  if (!(s > 0.0)) fail(ErrorKind::Domain, "A_constant requires s > 0");
  if (p < 2.0) {
    if (s > critical_order(p) + kEpsCrit)
      fail(ErrorKind::UnsupportedRange,
           "A_constant: no sharp constant is established for 1 < p < 2 with s > sec^2(pi/2p)");
    return std::pow(2.0, 1.0 / s) / (2.0 * std::cos(pi / (2.0 * p)));
  }
  const KMaximum km = maximize_K(p, s, y_max);
  return std::pow(2.0, 1.0 / s - 0.5) * std::pow(km.C, 1.0 / p);
}

double lower_bound_log_maximand(double y, double p, double s) {
  const KSign sign = p >= 2.0 ? KSign::MinusCos : KSign::PlusCos;
  return std::log(2.0) / s + num::logcosh(0.5 * s * y) / s - 0.5 * std::log(2.0) -
         0.5 * log_denominator(y, p, sign);
}

double lower_bound_log_derivative(double y, double p, double s) {
  const double den = p >= 2.0 ? num::cosh_minus_cos(y, pi / p) : num::cosh_minus_cos(y, pi - pi / p);
  return 0.5 * std::tanh(0.5 * s * y) - 0.5 * std::sinh(y) / den;
}

LowerBound sharp_lower_bound(double p, double s, double y_max) {
  if (!(p > 1.0) || !(s > 0.0)) fail(ErrorKind::Domain, "sharp_lower_bound requires p > 1, s > 0");
  auto f = [&](double y) { return lower_bound_log_maximand(y, p, s); };
  // Coarse scan locates the basin, Brent search refines it.
  constexpr int n = 4000;
  const double h = y_max / n;
  int best = 0;
  double fbest = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const double v = f(i * h);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  if (best == n)
    fail(ErrorKind::Convergence, "sharp_lower_bound: maximizer not found inside [0, y_max]");
  const double lo = best == 0 ? 0.0 : (best - 1) * h;
  const double hi = (best + 1) * h;
  double y = num::argmax_unimodal(f, lo, hi);
  // Refine with the sign of the derivative when it changes sign on the bracket.
  auto d = [&](double t) { return lower_bound_log_derivative(t, p, s); };
  const double a = std::fmax(lo, 1e-300);
  if (d(a) > 0.0 && d(hi) < 0.0) y = num::bisect(d, a, hi, 1e-14);
  double value = std::exp(f(y));
  if (best == 0 && std::exp(f(0.0)) >= value) {
    y = 0.0;
    value = std::exp(f(0.0));
  }
  return LowerBound{y, value};
}

SharpConstantBundle compute_constants(double p, double s, double y_max) {
  SharpConstantBundle b;
  b.pair = ExponentPair::make(p, s);
  if (p < 2.0) {
    b.A_ps = A_constant(p, s, y_max);
    b.y_tilde = 0.0;
    b.k_max = K_value(0.0, p, s, KSign::PlusCos);
    b.c_ps = std::pow(2.0 * std::cos(pi / (2.0 * p)), -p);
    b.D_ps = std::tan(pi / (2.0 * p));
    return b;
  }
  const KMaximum km = maximize_K(p, s, y_max);
  b.y_tilde = km.y_tilde;
  b.attained = km.attained;
  b.k_max = km.C;
  b.c_ps = std::pow(2.0, -0.5 * p) * km.C;
  b.D_ps = km.attained ? D_constant(p, s, y_max) : 0.0;
  b.A_ps = std::pow(2.0, 1.0 / s) * std::pow(b.c_ps, 1.0 / p);
  return b;
}

}  // namespace rsharp
