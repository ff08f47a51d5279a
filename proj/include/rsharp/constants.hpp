#pragma once

#include <string_view>

namespace rsharp {

enum class Regime { Subcritical, Critical, Supercritical };

std::string_view to_string(Regime r) noexcept;

// Tolerance used to decide whether s sits on the critical cutoff.
inline constexpr double kEpsCrit = 1e-9;
inline constexpr double kDefaultYMax = 50.0;

// s*(p): csc^2(pi/2p) for p >= 2, sec^2(pi/2p) for 1 < p < 2.
double critical_order(double p);

struct ExponentPair {
  double p = 2.0;
  double s = 2.0;
  Regime regime = Regime::Critical;

  // Validates p > 1, s > 0 and classifies the regime.
  static ExponentPair make(double p, double s);
};

enum class KSign { MinusCos, PlusCos };

// cosh^{p/s}(sy/2) / (cosh y -+ cos(pi/p))^{p/2}
double K_value(double y, double p, double s, KSign sign = KSign::MinusCos);
double log_K(double y, double p, double s, KSign sign = KSign::MinusCos);

struct KMaximum {
  double y_tilde = 0.0;  // argmax, meaningful only when attained
  bool attained = true;
  double C = 0.0;        // max (or supremum) of K over y >= 0
};

// Maximum of K for p >= 2. For p = 2, s > 2 the supremum 2^{1-2/s} is only
// approached as y -> infinity and the result is flagged unattained.
KMaximum maximize_K(double p, double s, double y_max = kDefaultYMax);

// sinh((s-2)y/2)/sinh(sy/2) - cos(pi/p); strictly decreasing in y for s > 2.
double k_root_function(double y, double p, double s);

double D_constant(double p, double s, double y_max = kDefaultYMax);
double A_constant(double p, double s, double y_max = kDefaultYMax);

struct LowerBound {
  double y_star = 0.0;
  double value = 0.0;
};

// max_y 2^{1/s} cosh^{1/s}(sy/2) / (sqrt(2) (cosh y -+ cos(pi/p))^{1/2}),
// minus sign for p >= 2 and plus sign for p < 2.
LowerBound sharp_lower_bound(double p, double s, double y_max = kDefaultYMax);

// Log of the maximand above and its y-derivative.
double lower_bound_log_maximand(double y, double p, double s);
double lower_bound_log_derivative(double y, double p, double s);

struct SharpConstantBundle {
  ExponentPair pair;
  double y_tilde = 0.0;
  bool attained = true;
  double k_max = 0.0;  // max of K, enters the master function
  double c_ps = 0.0;   // 2^{-p/2} k_max, so that A = 2^{1/s} c_ps^{1/p}
  double D_ps = 0.0;   // 0 when unattained
  double A_ps = 0.0;
};

SharpConstantBundle compute_constants(double p, double s, double y_max = kDefaultYMax);

}  // namespace rsharp
