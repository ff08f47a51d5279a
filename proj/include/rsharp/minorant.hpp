#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "rsharp/constants.hpp"

namespace rsharp {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultCellBudget = 100'000'000;
inline constexpr double kMarginTol = 1e-9;
inline constexpr double kReductionTol = 1e-9;

struct GridSpec {
  double y_lo = 0.0;
  double y_max = 10.0;
  int n_y = 2000;
  double t_lo = 0.0;
  double t_hi = 1.0;
  int n_t = 2000;
  bool offset_half_cell = false;

  [[nodiscard]] double y_at(int i) const;
  [[nodiscard]] double t_at(int j) const;
  [[nodiscard]] double y_step() const;
  [[nodiscard]] double t_step() const;
  // Throws Domain for malformed specs and CellBudget when n_y * n_t > budget.
  void validate(std::size_t cell_budget = kDefaultCellBudget) const;
};

struct VerificationReport {
  std::string check_id;
  ExponentPair params;
  GridSpec grid;
  double min_margin = 0.0;
  double argmin_y = 0.0;
  double argmin_t = 0.0;
  std::size_t violations = 0;
  double tol = kMarginTol;
  // Largest relative disagreement between the master function and the
  // rescaled two-variable margin over the sampled reduction cells.
  double reduction_max_rel_error = 0.0;
  std::size_t reduction_samples = 0;

  [[nodiscard]] bool passed() const {
    return violations == 0 && min_margin >= -tol && reduction_max_rel_error <= kReductionTol;
  }
};

// Angular profile whose homogeneous extension r^p v_p(t) is subharmonic. p >= 2.
double v_p(double t, double p);

// (|z||w|)^{p/2} v_p((arg z + arg w)/2), zero when z or w vanishes.
double minorant_E(cplx z, cplx w, double p);

// U(z) = |z|^p v_p(arg z).
double minorant_U(cplx z, double p);

VerificationReport subharmonic_mean_check(double p, int trials, double radius,
                                          std::uint64_t seed = 2024,
                                          std::optional<cplx> pinned_center = std::nullopt,
                                          double tol = kMarginTol);

enum class MasterBranch { CriticalGe2, SupercriticalGe2, CriticalLt2 };

std::string_view to_string(MasterBranch b) noexcept;

// Constants of one branch, resolved once so grid sweeps do not recompute them.
struct MasterContext {
  MasterBranch branch = MasterBranch::CriticalGe2;
  ExponentPair pair;
  double C = 1.0;        // coefficient of the (cosh y -+ cos t)^{p/2} term
  double D = 1.0;        // coefficient of cos(tp/2)
  double y_tilde = 0.0;  // location of the zero in y
  double t_hi = 0.0;     // right end of the reduced t range

  // phi_master requires s on the cutoff for the critical branches and
  // beyond it for the supercritical one.
  static MasterContext make(MasterBranch branch, double p, double s);
  // elementary_margin additionally accepts s below the cutoff on CriticalGe2.
  static MasterContext make_for_margin(MasterBranch branch, double p, double s);
};

double phi_master(double y, double t, const MasterContext& ctx);
double phi_master(double y, double t, const ExponentPair& pair, MasterBranch branch);

// RHS - LHS of the pointwise inequality for the branch.
double elementary_margin(cplx z, cplx w, const MasterContext& ctx);
double elementary_margin(cplx z, cplx w, const ExponentPair& pair, MasterBranch branch);

// Master function recovered from the two-variable margin by the reduction
// w = 1, r = e^{-y} and the branch-specific angle for z.
double reduced_margin(double y, double t, const MasterContext& ctx);

struct RegionOptions {
  double tol = kMarginTol;
  std::size_t cell_budget = kDefaultCellBudget;
  int reduction_samples = 100;
  std::uint64_t seed = 17;
};

// Default grid for a branch: y in [0, 10], t over the reduced range.
GridSpec default_grid(MasterBranch branch, double p, int n_y = 2000, int n_t = 2000,
                      double y_max = 10.0);

VerificationReport verify_region(MasterBranch branch, const ExponentPair& pair,
                                 const GridSpec& grid, const RegionOptions& opt = {});

// The master function vanishes at (y~, pi/p). This records its value there
// and the smallest grid value more than one cell away from that point.
struct ZeroLocation {
  double y0 = 0.0;
  double t0 = 0.0;
  double value_at_zero = 0.0;
  double min_outside = 0.0;
  double argmin_outside_y = 0.0;
  double argmin_outside_t = 0.0;

  [[nodiscard]] bool unique(double tol = 1e-10) const {
    return std::fabs(value_at_zero) <= tol && min_outside > 0.0;
  }
};

ZeroLocation locate_zero(MasterBranch branch, const ExponentPair& pair, const GridSpec& grid);

// Random (z, w) over the whole plane, margins scaled by max(|z|,|w|)^p.
VerificationReport spot_check_plane(MasterBranch branch, const ExponentPair& pair,
                                    int samples = 10000, std::uint64_t seed = 99,
                                    double tol = kMarginTol);

}  // namespace rsharp
