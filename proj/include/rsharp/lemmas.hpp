#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rsharp/constants.hpp"

namespace rsharp {

inline constexpr double kLemmaTol = 1e-9;
inline constexpr double kFdStep = 1e-6;
inline constexpr double kFdTol = 1e-6;
inline constexpr double kWitnessTol = 1e-6;

struct LemmaCheckResult {
  std::string lemma_id;
  std::string param_grid;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::string, double>> argmin;
  bool passed = false;
  double tol = kLemmaTol;
  // Margin at the point where the inequality is predicted to be an equality;
  // NaN when the check has no such point.
  double endpoint_margin = std::numeric_limits<double>::quiet_NaN();
  // Falsification searches succeed by finding a violation, so for them
  // passed == false is the expected outcome.
  bool falsification = false;
  // Composite checks list their parts here; passed then requires every part
  // to pass against its own tolerance.
  std::vector<LemmaCheckResult> parts;
  std::string note;

  [[nodiscard]] bool succeeded() const { return falsification ? !passed : passed; }
};

struct ImplicitCurveSample {
  double t = 0.0;
  double y_p = 0.0;
  double residual = 0.0;  // phi(y_p) - cos t
};

struct SeriesCoefficient {
  double value = 0.0;  // +-inf when the magnitude overflows
  int sign = 0;        // -1, 0 or +1
  double log_magnitude = -std::numeric_limits<double>::infinity();
  bool overflow = false;
};

enum class GBoundMode { CriticalBound, SupercriticalUpper, SupercriticalLower };

// ---- sine ratios (p >= 2)
double sine_ratio_lower_margin(double t, double p);
LemmaCheckResult check_sine_ratio_lower(double p, int n_t = 100000, double tol = kLemmaTol);
LemmaCheckResult check_sine_ratio_monotone(double alpha, double beta, int n_t = 10000);

// ---- hyperbolic estimates
LemmaCheckResult check_hyperbolic_threshold(double p, double s, int n_y = 10000, double y_max = 20.0);
LemmaCheckResult check_cosh_cos(int n_x = 100000);

double G_function(double y, double p, double s);
LemmaCheckResult check_G_bounds(double p, double s, GBoundMode mode, int n_y = 10000,
                                double y_max = 20.0);

SeriesCoefficient series_coefficient_a(int k, double p, double s);
LemmaCheckResult check_sign_pattern(double p, double s, int k_max = 200);

// ---- the curve phi and the implicit function y_p(t)

// For p > 2: cosh y - (f(y)/C)^{2/(p-2)} with C the maximum of K.
// For 1 < p < 2: (f(y)/C)^{2/(p-2)} - cosh y with C = (1 + cos(pi/p))^{-p/2}.
// Here f(y) = cosh^{p/s-1}(sy/2) sinh(sy/2) / sinh y.
class PhiCurve {
 public:
  PhiCurve(double p, double s);
  double operator()(double y) const;
  [[nodiscard]] double at_zero() const { return at_zero_; }
  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double s() const { return s_; }
  [[nodiscard]] double C() const { return C_; }
  [[nodiscard]] double y_tilde() const { return y_tilde_; }
  [[nodiscard]] bool below_two() const { return p_ < 2.0; }

 private:
  double p_, s_, C_, log_C_, y_tilde_ = 0.0, expo_, at_zero_;
};

double phi_curve(double y, double p, double s);
LemmaCheckResult check_phi_monotone(double p, double s, int n_y = 10000, double y_max = 20.0);

ImplicitCurveSample solve_y_p(double t, double p, double s);
ImplicitCurveSample solve_y_p(double t, const PhiCurve& phi);

double y_prime(double p, double s);

struct AlphaLocation {
  double alpha_p = 0.0;
  double y_double_prime = 0.0;
};
// Largest t <= 2pi/p for which phi(y) = cos t is solvable, and the smallest
// root of phi(y) = cos(alpha_p). Supercritical p > 2 only.
AlphaLocation locate_alpha_p(double p, double s);

LemmaCheckResult check_descent(double p, double s, int n_t = 10000);

// ---- 1 < p < 2
double lemma7_c_p(double p);
LemmaCheckResult check_sine_ratio_upper(double p, int n_t = 10000);
LemmaCheckResult psi_suite(double p, int n_grid = 10000);

// Searches for a violation of the inequality beyond the proven range.
// 4/3 < p < 2 with s = sec^2(pi/2p): grid minimum of the p < 2 master function.
// p >= 2 with s > csc^2(pi/2p): a point where K exceeds K(0).
LemmaCheckResult falsify_beyond_cutoff(double p, double s, int n_y = 601, int n_t = 601,
                                       double y_max = 3.0);

}  // namespace rsharp
