#pragma once

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

#include "rsharp/error.hpp"

namespace rsharp::num {

inline constexpr double pi = std::numbers::pi;

// log(cosh x) without overflow for large |x|.
inline double logcosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// log(sinh x) for x > 0.
inline double logsinh(double x) {
  return x + std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2;
}

// cosh y - cos c = 2 sinh^2(y/2) + 2 sin^2(c/2), free of cancellation near y = 0.
inline double cosh_minus_cos(double y, double c) {
  const double sh = std::sinh(0.5 * y);
  const double sn = std::sin(0.5 * c);
  return 2.0 * (sh * sh + sn * sn);
}

// log(cosh y - cos c), valid for large y.
inline double log_cosh_minus_cos(double y, double c) {
  if (std::fabs(y) < 20.0) return std::log(cosh_minus_cos(y, c));
  return logcosh(y) + std::log1p(-std::cos(c) / std::cosh(std::fmin(std::fabs(y), 700.0)));
}

// sinh(a y)/sinh(b y) for 0 < a < b or a <= 0, y >= 0; limit a/b at y = 0.
inline double sinh_ratio(double a, double b, double y) {
  if (y == 0.0) return a / b;
  const double num = std::expm1(-2.0 * a * y);
  const double den = std::expm1(-2.0 * b * y);
  return std::exp((a - b) * y) * num / den;
}

// Bisection on a sign change of f over [lo, hi]. f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-14, int max_iter = 400) {
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) fail(ErrorKind::Bracketing, "bisect: no sign change on bracket");
  auto done = [rel_tol](double a, double b) {
    return std::fabs(b - a) <= rel_tol * std::fmax(std::fabs(a), std::fabs(b));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, done, iters);
  return 0.5 * (a + b);
}

// Brent search for a maximum of a unimodal f on [lo, hi], to full working precision.
template <class F>
double argmax_unimodal(F&& f, double lo, double hi) {
  std::uintmax_t iters = 300;
  auto neg = [&f](double x) { return -f(x); };
  return boost::math::tools::brent_find_minima(neg, lo, hi, std::numeric_limits<double>::digits, iters).first;
}

inline double relative_diff(double a, double b) {
  const double scale = std::fmax(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace rsharp::num
