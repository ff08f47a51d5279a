#include "rsharp/lemmas.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "rsharp/error.hpp"
#include "rsharp/minorant.hpp"
#include "rsharp/numerics.hpp"

namespace rsharp {

using num::pi;

namespace {

// Running minimum with first-wins argmin.
struct Tracker {
  double min = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::string, double>> argmin;

  void update(double m, std::vector<std::pair<std::string, double>> where) {
    if (m < min) {
      min = m;
      argmin = std::move(where);
    }
  }
};

LemmaCheckResult finish(std::string id, std::string grid, const Tracker& tr, double tol) {
  LemmaCheckResult r;
  r.lemma_id = std::move(id);
  r.param_grid = std::move(grid);
  r.min_margin = tr.min;
  r.argmin = tr.argmin;
  r.tol = tol;
  r.passed = std::isfinite(tr.min) && tr.min >= -tol;
  return r;
}

LemmaCheckResult compose(std::string id, std::string grid, std::vector<LemmaCheckResult> parts) {
  LemmaCheckResult r;
  r.lemma_id = std::move(id);
  r.param_grid = std::move(grid);
  r.passed = true;
  for (const auto& part : parts) {
    if (part.min_margin < r.min_margin) {
      r.min_margin = part.min_margin;
      r.argmin = part.argmin;
      r.argmin.emplace_back("part", static_cast<double>(&part - parts.data()));
    }
    r.passed = r.passed && part.passed;
  }
  r.parts = std::move(parts);
  return r;
}

double central_diff(const auto& f, double x, double h = kFdStep) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double acosh_sec(double p) { return std::acosh(1.0 / std::cos(pi / p)); }

void require_ge2(double p, const char* who) {
  if (!(p >= 2.0)) fail(ErrorKind::Domain, std::string(who) + " requires p >= 2");
}

double log_f(double y, double p, double s) {
  return (p / s - 1.0) * num::logcosh(0.5 * s * y) + num::logsinh(0.5 * s * y) - num::logsinh(y);
}

}  // namespace

// ------------------------------------------------------------ sine ratios

double sine_ratio_lower_margin(double t, double p) {
  const double a = pi / p;
  const double e_p = 1.0 / (std::sin(a) * std::pow(std::cos(a), 0.5 * p - 1.0));
  return std::sin(0.5 * t * p) / std::sin(t) - e_p * std::pow(std::cos(t), 0.5 * p - 1.0);
}

LemmaCheckResult check_sine_ratio_lower(double p, int n_t, double tol) {
  require_ge2(p, "check_sine_ratio_lower");
  if (n_t < 1) fail(ErrorKind::Domain, "n_t must be positive");
  Tracker tr;
  const double a = pi / p;
  for (int k = 1; k <= n_t; ++k) {
    const double t = a * k / n_t;
    tr.update(sine_ratio_lower_margin(t, p), {{"t", t}});
  }
  auto r = finish("lemma3-sine-ratio-lower", fmt::format("t in (0, pi/p], {} nodes", n_t), tr, tol);
  r.endpoint_margin = sine_ratio_lower_margin(a, p);
  if (!r.passed) {
    const double e_p = 1.0 / (std::sin(a) * std::pow(std::cos(a), 0.5 * p - 1.0));
    r.note = fmt::format("limit of the margin at t -> 0+ is p/2 - E_p = {:.6g}", 0.5 * p - e_p);
  }
  return r;
}

LemmaCheckResult check_sine_ratio_monotone(double alpha, double beta, int n_t) {
  if (!(alpha > 0.0) || !(alpha < beta)) fail(ErrorKind::Domain, "claim requires 0 < alpha < beta");
  if (n_t < 1) fail(ErrorKind::Domain, "n_t must be positive");
  auto g = [&](double t) { return std::sin(alpha * t) / std::sin(beta * t); };
  Tracker tr;
  const double end = pi / beta;
  for (int k = 1; k <= n_t; ++k) {
    const double t = end * k / (n_t + 1);
    tr.update(central_diff(g, t) / std::max(1.0, std::fabs(g(t))), {{"t", t}});
  }
  return finish("claim1-sine-ratio-monotone",
                fmt::format("alpha={}, beta={}, t in (0, pi/beta), {} nodes", alpha, beta, n_t), tr,
                kFdTol);
}

// ------------------------------------------------------------ hyperbolic estimates

LemmaCheckResult check_hyperbolic_threshold(double p, double s, int n_y, double y_max) {
  if (!(p >= 4.0)) fail(ErrorKind::Domain, "hyperbolic threshold requires p >= 4");
  if (s < critical_order(p) - kEpsCrit)
    fail(ErrorKind::ParameterMismatch, "hyperbolic threshold requires s >= csc^2(pi/2p)");
  if (n_y < 2) fail(ErrorKind::Domain, "n_y must be at least 2");
  const PhiCurve phi(p, s);
  const double y0 = acosh_sec(p);
  if (!(y_max > y0)) fail(ErrorKind::Domain, "y_max must exceed arccosh(1/cos(pi/p))");
  Tracker tr;
  for (int k = 0; k < n_y; ++k) {
    const double y = y0 + (y_max - y0) * k / (n_y - 1);
    tr.update(phi(y) - 1.0, {{"y", y}});
  }
  auto r = finish("lemma4-hyperbolic-threshold",
                  fmt::format("y in [arccosh(1/cos(pi/p)), {}], {} nodes", y_max, n_y), tr, kLemmaTol);
  r.passed = tr.min > 0.0;  // the lemma claims a strict inequality
  r.note = "strict inequality";
  return r;
}

LemmaCheckResult check_cosh_cos(int n_x) {
  if (n_x < 1) fail(ErrorKind::Domain, "n_x must be positive");
  Tracker tr;
  for (int k = 0; k <= n_x; ++k) {
    const double x = static_cast<double>(k) / n_x;
    tr.update(1.0 - std::cosh(x) * std::cos(x), {{"x", x}});
  }
  auto r = finish("coscosh-bound", fmt::format("x in [0, 1], {} nodes", n_x + 1), tr, kLemmaTol);
  r.endpoint_margin = 0.0;  // 1 - cosh(0)cos(0) evaluates exactly
  return r;
}

double G_function(double y, double p, double s) {
  if (!(y >= 0.0)) fail(ErrorKind::Domain, "G requires y >= 0");
  if (y == 0.0) return 0.5 * s;
  return std::exp(log_f(y, p, s) - (0.5 * p - 1.0) * num::logcosh(y));
}

LemmaCheckResult check_G_bounds(double p, double s, GBoundMode mode, int n_y, double y_max) {
  require_ge2(p, "check_G_bounds");
  if (n_y < 2) fail(ErrorKind::Domain, "n_y must be at least 2");
  const double star = critical_order(p);
  Tracker tr;
  std::string id;
  double lo = 0.0, hi = 0.0, ref = 0.0;
  int dir = 1;  // +1: margin = ref - G, -1: margin = G - ref
  switch (mode) {
    case GBoundMode::CriticalBound:
      if (std::fabs(s - star) > kEpsCrit)
        fail(ErrorKind::ParameterMismatch, "critical G bound requires s = csc^2(pi/2p)");
      id = "G-critical-bound";
      hi = p > 4.0 ? acosh_sec(p) : y_max;
      ref = 0.5 * s;
      break;
    case GBoundMode::SupercriticalUpper:
    case GBoundMode::SupercriticalLower: {
      if (!(s > star + kEpsCrit))
        fail(ErrorKind::ParameterMismatch, "supercritical G bounds require s > csc^2(pi/2p)");
      if (p == 2.0) fail(ErrorKind::Domain, "maximum of K is not attained at p = 2");
      const KMaximum km = maximize_K(p, s);
      ref = G_function(km.y_tilde, p, s);
      if (mode == GBoundMode::SupercriticalUpper) {
        id = "G-supercritical-upper";
        lo = km.y_tilde;
        hi = p >= 4.0 ? y_prime(p, s) : y_max;
      } else {
        id = "G-supercritical-lower";
        hi = km.y_tilde;
        dir = -1;
      }
      break;
    }
  }
  for (int k = 0; k < n_y; ++k) {
    const double y = lo + (hi - lo) * k / (n_y - 1);
    const double g = G_function(y, p, s);
    tr.update(dir * (ref - g) / std::max(1.0, ref), {{"y", y}});
  }
  auto r = finish(id, fmt::format("y in [{:.6g}, {:.6g}], {} nodes", lo, hi, n_y), tr, kLemmaTol);
  const double y_eq = mode == GBoundMode::SupercriticalLower ? hi : lo;
  r.endpoint_margin = dir * (ref - G_function(y_eq, p, s)) / std::max(1.0, ref);
  return r;
}

SeriesCoefficient series_coefficient_a(int k, double p, double s) {
  if (k < 1) fail(ErrorKind::Domain, "series index k must be >= 1");
  if (!(s > 0.0)) fail(ErrorKind::Domain, "series coefficient requires s > 0");
  const double n = 2.0 * k + 1.0;
  // a_k = s^{2k+1} * B with every ratio bounded for s >= 2.
  const double t1 = 0.25 * p * std::pow((s - 2.0) / s, n);
  const double t2 = 1.0 - 0.25 * p;
  const double t3 = (0.25 * p - 0.5 * s) * std::pow(2.0 / s, n);
  const double b = t1 + t2 + t3;
  const double scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
  SeriesCoefficient out;
  if (std::fabs(b) <= 64.0 * DBL_EPSILON * scale) return out;
  out.sign = b > 0.0 ? 1 : -1;
  out.log_magnitude = n * std::log(s) + std::log(std::fabs(b));
  out.overflow = out.log_magnitude > std::log(DBL_MAX);
  out.value = out.overflow ? out.sign * std::numeric_limits<double>::infinity()
                           : out.sign * std::exp(out.log_magnitude);
  return out;
}

LemmaCheckResult check_sign_pattern(double p, double s, int k_max) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "sign pattern requires p > 1");
  if (!(s >= 2.0)) fail(ErrorKind::Domain, "sign pattern requires s >= 2");
  if (k_max < 1) fail(ErrorKind::Domain, "k_max must be positive");
  const bool all_nonneg = p >= 2.0 && p <= 4.0 && std::fabs(s - critical_order(p)) <= kEpsCrit;
  int prev = 0, changes = 0, bad = 0, last_positive = 0;
  for (int k = 1; k <= k_max; ++k) {
    const int sg = series_coefficient_a(k, p, s).sign;
    if (sg > 0) last_positive = k;
    if (all_nonneg && sg < 0) ++bad;
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) {
      ++changes;
      if (prev < 0) ++bad;  // only + -> - is allowed
    }
    prev = sg;
  }
  if (changes > 1) bad += changes - 1;
  Tracker tr;
  tr.update(-static_cast<double>(bad),
            {{"k0", static_cast<double>(last_positive)}, {"sign_changes", static_cast<double>(changes)}});
  auto r = finish("lemma5-sign-pattern", fmt::format("k in [1, {}]", k_max), tr, kLemmaTol);
  r.note = fmt::format("{} sign change(s); last positive coefficient at k = {}", changes, last_positive);
  return r;
}

// ------------------------------------------------------------ phi and y_p

PhiCurve::PhiCurve(double p, double s) : p_(p), s_(s) {
  if (!(p > 1.0) || !(s > 0.0)) fail(ErrorKind::Domain, "phi requires p > 1, s > 0");
  if (std::fabs(p - 2.0) < 1e-6)
    fail(ErrorKind::DegenerateExponent, "exponent 2/(p-2) degenerates at p = 2");
  if (p > 2.0) {
    const KMaximum km = maximize_K(p, s);
    C_ = km.C;
    y_tilde_ = km.y_tilde;
  } else {
    const double cs = std::cos(pi / (2.0 * p));
    C_ = std::pow(2.0 * cs * cs, -0.5 * p);
  }
  log_C_ = std::log(C_);
  expo_ = 2.0 / (p - 2.0);
  const double w = std::exp(expo_ * (std::log(0.5 * s) - log_C_));
  at_zero_ = p > 2.0 ? 1.0 - w : w - 1.0;
}

double PhiCurve::operator()(double y) const {
  if (y == 0.0) return at_zero_;
  const double w = std::exp(expo_ * (log_f(y, p_, s_) - log_C_));
  return p_ > 2.0 ? std::cosh(y) - w : w - std::cosh(y);
}

double phi_curve(double y, double p, double s) {
  if (!(y >= 0.0)) fail(ErrorKind::Domain, "phi requires y >= 0");
  return PhiCurve(p, s)(y);
}

LemmaCheckResult check_phi_monotone(double p, double s, int n_y, double y_max) {
  const PhiCurve phi(p, s);
  if (n_y < 1) fail(ErrorKind::Domain, "n_y must be positive");
  const double hi = p > 4.0 ? acosh_sec(p) : y_max;
  Tracker tr;
  for (int k = 1; k <= n_y; ++k) {
    const double y = hi * k / (n_y + 1);
    tr.update(central_diff(phi, y) / std::max(1.0, std::fabs(phi(y))), {{"y", y}});
  }
  const char* id = p < 2.0 ? "lemma10-phi-monotone" : "lemma6-phi-monotone";
  return finish(id, fmt::format("y in (0, {:.6g}), {} nodes", hi, n_y), tr, kFdTol);
}

ImplicitCurveSample solve_y_p(double t, const PhiCurve& phi) {
  const double p = phi.p();
  if (t < 0.0 || t > pi / p + 1e-12) fail(ErrorKind::Domain, "solve_y_p requires t in [0, pi/p]");
  const double target = std::cos(t);
  auto g = [&](double y) { return phi(y) - target; };
  const double lo = phi.y_tilde();
  const double g_lo = g(lo);
  if (g_lo >= 0.0) {
    if (g_lo <= 1e-12) return ImplicitCurveSample{t, lo, g_lo};
    fail(ErrorKind::Bracketing, "solve_y_p: phi already exceeds cos t at the left end");
  }
  double hi;
  if (p >= 4.0) {
    hi = acosh_sec(p);
    if (!(g(hi) > 0.0)) fail(ErrorKind::Bracketing, "solve_y_p: no sign change below arccosh(1/cos(pi/p))");
  } else {
    hi = std::max(1.0, 2.0 * lo);
    while (g(hi) <= 0.0 && hi < kDefaultYMax) hi = std::min(2.0 * hi, kDefaultYMax);
    if (!(g(hi) > 0.0)) fail(ErrorKind::Bracketing, "solve_y_p: phi does not reach cos t");
  }
  const double y = num::bisect(g, lo, hi, 1e-15);
  const double res = g(y);
  if (std::fabs(res) > 1e-10) fail(ErrorKind::Convergence, "solve_y_p: residual above 1e-10");
  return ImplicitCurveSample{t, y, res};
}

ImplicitCurveSample solve_y_p(double t, double p, double s) { return solve_y_p(t, PhiCurve(p, s)); }

double y_prime(double p, double s) {
  const bool super = s > critical_order(p) + kEpsCrit;
  if (!(p > 4.0 || (p >= 4.0 && super)))
    fail(ErrorKind::Domain, "y_prime requires p > 4, or p >= 4 with supercritical s");
  const PhiCurve phi(p, s);
  const double y0 = acosh_sec(p);
  const double lo = std::max(phi.y_tilde(), 1e-9);
  auto g = [&](double y) { return phi(y) - 1.0; };
  if (!(g(y0) > 0.0)) fail(ErrorKind::Convergence, "y_prime: phi(arccosh(1/cos(pi/p))) <= 1");
  constexpr int n = 4000;
  double right = y0, g_right = g(y0);
  for (int k = n - 1; k >= 0; --k) {
    const double y = lo + (y0 - lo) * k / n;
    const double gy = g(y);
    if (gy <= 0.0 && g_right > 0.0) return num::bisect(g, y, right, 1e-15);
    right = y;
    g_right = gy;
  }
  fail(ErrorKind::Bracketing, "y_prime: phi(y) = 1 has no root below arccosh(1/cos(pi/p))");
}

AlphaLocation locate_alpha_p(double p, double s) {
  if (!(p > 2.0) || !(s > critical_order(p) + kEpsCrit))
    fail(ErrorKind::Domain, "alpha_p is defined for supercritical p > 2");
  const PhiCurve phi(p, s);
  const double yt = phi.y_tilde();
  double m = phi(0.0);
  for (int k = 1; k <= 2000; ++k) m = std::min(m, phi(yt * k / 2000.0));
  const double cos_alpha = std::max(m, std::cos(2.0 * pi / p));
  AlphaLocation out;
  out.alpha_p = std::acos(std::clamp(cos_alpha, -1.0, 1.0));
  auto g = [&](double y) { return phi(y) - cos_alpha; };
  out.y_double_prime = g(0.0) >= 0.0 ? 0.0 : num::bisect(g, 0.0, yt, 1e-15);
  return out;
}

LemmaCheckResult check_descent(double p, double s, int n_t) {
  if (!(p > 2.0)) fail(ErrorKind::Domain, "descent check requires p > 2");
  if (s < critical_order(p) - kEpsCrit)
    fail(ErrorKind::ParameterMismatch, "descent check requires s >= csc^2(pi/2p)");
  if (n_t < 2) fail(ErrorKind::Domain, "n_t must be at least 2");
  const PhiCurve phi(p, s);
  const double C = phi.C();
  const double D = D_constant(p, s);
  auto master = [&](double y, double t) {
    return -std::exp((p / s) * num::logcosh(0.5 * s * y)) +
           C * std::pow(num::cosh_minus_cos(y, t), 0.5 * p) + D * std::cos(0.5 * t * p);
  };
  Tracker tr;
  const double end = pi / p;
  double prev_master = 0.0;
  for (int k = 1; k <= n_t; ++k) {
    const double t = end * k / (n_t + 1);
    const ImplicitCurveSample smp = solve_y_p(t, phi);
    const double lhs = D * std::sin(0.5 * t * p) / std::sin(t);
    const double rhs = C * std::pow(num::cosh_minus_cos(smp.y_p, t), 0.5 * p - 1.0);
    tr.update((lhs - rhs) / std::max(1.0, lhs), {{"t", t}, {"y_p", smp.y_p}, {"kind", 0.0}});
    const double cur = master(smp.y_p, t);
    if (k > 1) {
      const double scale = std::max(1.0, std::exp((p / s) * num::logcosh(0.5 * s * smp.y_p)));
      tr.update(-(cur - prev_master) / scale, {{"t", t}, {"y_p", smp.y_p}, {"kind", 1.0}});
    }
    prev_master = cur;
  }
  auto r = finish("descent-along-y_p", fmt::format("t in (0, pi/p), {} nodes", n_t), tr, kLemmaTol);
  const double rhs_end = C * std::pow(num::cosh_minus_cos(phi.y_tilde(), end), 0.5 * p - 1.0);
  const double lhs_end = D / std::sin(end);
  r.endpoint_margin = (lhs_end - rhs_end) / std::max(1.0, lhs_end);
  r.note = "kind 0: derivative inequality; kind 1: monotonicity of the master function along y_p";
  return r;
}

// ------------------------------------------------------------ 1 < p < 2

double lemma7_c_p(double p) {
  if (!(p > 1.0) || !(p < 2.0)) fail(ErrorKind::Domain, "c_p is defined for 1 < p < 2");
  const double sn = std::sin(pi / p);
  return (0.5 * p * sn * sn - 1.0) / std::cos(pi / p);
}

LemmaCheckResult check_sine_ratio_upper(double p, int n_t) {
  const double c = lemma7_c_p(p);
  if (n_t < 2) fail(ErrorKind::Domain, "n_t must be at least 2");
  const double a = pi / p;
  auto margin = [&](double t) {
    return (1.0 / std::sin(a)) * std::pow((c + std::cos(t)) / (c + std::cos(a)), 0.5 * p - 1.0) -
           std::sin(0.5 * t * p) / std::sin(t);
  };
  Tracker main;
  for (int k = 1; k <= n_t; ++k) {
    const double t = a * k / n_t;
    main.update(margin(t), {{"t", t}});
  }
  auto lem = finish("lemma7-sine-ratio-upper", fmt::format("t in (0, pi/p], {} nodes", n_t), main, kLemmaTol);
  lem.endpoint_margin = margin(a);

  auto phi = [&](double t) {
    return std::sin(0.5 * t * p) / (std::sin(0.5 * t) * std::pow(std::cos(0.5 * t), p - 1.0));
  };
  Tracker inc;
  for (int k = 1; k <= n_t; ++k) {
    const double t = a + (pi - a) * k / (n_t + 1);
    inc.update(central_diff(phi, t) / std::max(1.0, std::fabs(phi(t))), {{"t", t}});
  }
  auto claim = finish("claim2-increasing", fmt::format("t in (pi/p, pi), {} nodes", n_t), inc, kFdTol);

  auto r = compose("lemma7-sine-ratio-upper", fmt::format("p={}", p), {lem, claim});
  r.endpoint_margin = lem.endpoint_margin;
  r.note = fmt::format("c_p = {:.12g}", c);
  return r;
}

LemmaCheckResult psi_suite(double p, int n_grid) {
  if (!(p > 1.0) || p > 4.0 / 3.0 + 1e-12) fail(ErrorKind::Domain, "psi suite requires 1 < p <= 4/3");
  if (n_grid < 2) fail(ErrorKind::Domain, "n_grid must be at least 2");
  const double s = critical_order(p);
  const double c_p = lemma7_c_p(p);
  const double c = p <= 1.25 ? pi : 13.0 / 5.0;
  const double y_c = c * (p - 1.0);
  std::vector<LemmaCheckResult> parts;

  {  // (a) sign of psi at the origin, reduced to a closed form
    Tracker tr;
    tr.update((2.0 * (1.0 - c_p) / (2.0 - p)) * (1.0 / 3.0 + s * s / 6.0 - p * s / 4.0) - 1.0, {{"p", p}});
    auto r = finish("psi-step2", "closed form", tr, kLemmaTol);
    // equality holds only at the cutoff p = 4/3
    if (std::fabs(p - 4.0 / 3.0) <= 1e-12) r.endpoint_margin = tr.min;
    parts.push_back(r);
  }
  {  // (b) exponential localisation inequality at y = c(p-1)
    Tracker tr;
    const double e = std::exp(-y_c);
    const double rhs = std::pow(1.0 + e, p - 1.0) * (1.0 - e);
    const double lhs = std::pow(2.0 * std::cos(pi / (2.0 * p)), p) *
                       std::pow(0.5 * (1.0 + std::exp(-s * y_c)), p / s);
    tr.update(rhs - lhs, {{"y", y_c}});
    parts.push_back(finish("lemma9-localization", fmt::format("y = {:.6g}", y_c), tr, kLemmaTol));
  }
  {  // (c) endpoint cosh bound
    Tracker tr;
    tr.update(p / (p - 2.0) * std::cos(pi / p) - std::cosh(y_c), {{"y", y_c}});
    parts.push_back(finish("psi-endpoint-cosh", fmt::format("y = {:.6g}", y_c), tr, kLemmaTol));
  }
  {  // (d) psi on [0, c(p-1)]
    const double expo = 2.0 / (p - 2.0);
    auto psi = [&](double y) {
      const double w = y == 0.0 ? 1.0 : std::exp(expo * (std::log(2.0 / s) + log_f(y, p, s)));
      return c_p - std::cosh(y) + (1.0 - c_p) * w;
    };
    Tracker tr;
    for (int k = 0; k < n_grid; ++k) {
      const double y = y_c * k / (n_grid - 1);
      tr.update(psi(y), {{"y", y}});
    }
    auto r = finish("psi-grid", fmt::format("y in [0, {:.6g}], {} nodes", y_c, n_grid), tr, kLemmaTol);
    r.endpoint_margin = psi(0.0);
    parts.push_back(r);
  }
  if (p >= 1.25) {  // auxiliary bound and its monotonicity in p
    auto m = [](double q) {
      const double sq = critical_order(q);
      return std::pow(0.5 * (1.0 + std::exp(-sq * 13.0 * (q - 1.0) / 5.0)), q / sq);
    };
    Tracker tb;
    const double bound = p <= 1.3 ? 37.0 / 40.0 : 9.0 / 10.0;
    tb.update(bound - m(p), {{"p", p}});
    parts.push_back(finish("lemma8-bound", fmt::format("bound {:.6g}", bound), tb, kLemmaTol));
    Tracker tm;
    constexpr int n = 1000;
    double prev = m(1.25);
    for (int k = 1; k <= n; ++k) {
      const double q = 1.25 + (4.0 / 3.0 - 1.25) * k / n;
      const double cur = m(q);
      tm.update(prev - cur, {{"p", q}});
      prev = cur;
    }
    parts.push_back(finish("lemma8-monotone", "p in [5/4, 4/3], 1001 nodes", tm, kLemmaTol));
  }
  {  // phi increasing and phi(y') = 1 reached before c(p-1)
    parts.push_back(check_phi_monotone(p, s, n_grid));
    const PhiCurve phi(p, s);
    auto g = [&](double y) { return phi(y) - 1.0; };
    double hi = 1.0;
    while (g(hi) <= 0.0 && hi < kDefaultYMax) hi *= 2.0;
    const double yp = num::bisect(g, 0.0, hi, 1e-15);
    Tracker tr;
    tr.update(y_c - yp, {{"y_prime", yp}});
    parts.push_back(finish("lemma10-yprime-bound", fmt::format("c(p-1) = {:.6g}", y_c), tr, kLemmaTol));
  }
  auto r = compose("psi-suite", fmt::format("p={}, s=sec^2(pi/2p)", p), std::move(parts));
  r.endpoint_margin = r.parts[3].endpoint_margin;
  r.note = fmt::format("c = {:.6g}, c_p = {:.12g}", c, c_p);
  return r;
}

LemmaCheckResult falsify_beyond_cutoff(double p, double s, int n_y, int n_t, double y_max) {
  LemmaCheckResult r;
  if (p > 4.0 / 3.0 && p < 2.0) {
    const MasterContext ctx = MasterContext::make(MasterBranch::CriticalLt2, p, s);
    GridSpec g = default_grid(MasterBranch::CriticalLt2, p, n_y, n_t, y_max);
    g.validate();
    Tracker tr;
    for (int i = 0; i < n_y; ++i) {
      const double y = g.y_at(i);
      for (int j = 0; j < n_t; ++j) {
        const double t = g.t_at(j);
        tr.update(phi_master(y, t, ctx), {{"y", y}, {"t", t}});
      }
    }
    if (!(tr.min < -kWitnessTol))
      fail(ErrorKind::WitnessNotFound, "no grid cell with a negative master function was found");
    r = finish("falsify-p-gt-4-3", fmt::format("y in [0, {}] x t in [0, pi], {}x{}", y_max, n_y, n_t), tr,
               kWitnessTol);
  } else if (p >= 2.0 && s > critical_order(p) + kEpsCrit) {
    const double k0 = K_value(0.0, p, s);
    const KMaximum km = maximize_K(p, s);
    Tracker tr;
    if (km.attained) {
      tr.update(k0 - km.C, {{"y", km.y_tilde}, {"K", km.C}, {"K0", k0}});
    } else {
      for (int k = 1; k <= 5000; ++k) {
        const double y = kDefaultYMax * k / 5000.0;
        const double kv = K_value(y, p, s);
        tr.update(k0 - kv, {{"y", y}, {"K", kv}, {"K0", k0}});
      }
    }
    if (!(tr.min < 0.0)) fail(ErrorKind::WitnessNotFound, "K never exceeds K(0)");
    r = finish("falsify-supercritical", "maximum of K against K(0)", tr, 0.0);
    r.passed = false;
  } else {
    fail(ErrorKind::Domain, "falsification applies to 4/3 < p < 2 or to p >= 2 with s > csc^2(pi/2p)");
  }
  r.falsification = true;
  return r;
}

}  // namespace rsharp
