#include "rsharp/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rsharp/error.hpp"
#include "rsharp/numerics.hpp"

namespace rsharp {

using num::pi;

// ---------------------------------------------------------------- GridSpec

double GridSpec::y_step() const {
  return offset_half_cell ? (y_max - y_lo) / n_y : (y_max - y_lo) / (n_y - 1);
}

double GridSpec::t_step() const {
  return offset_half_cell ? (t_hi - t_lo) / n_t : (t_hi - t_lo) / (n_t - 1);
}

double GridSpec::y_at(int i) const {
  return y_lo + (i + (offset_half_cell ? 0.5 : 0.0)) * y_step();
}

double GridSpec::t_at(int j) const {
  return t_lo + (j + (offset_half_cell ? 0.5 : 0.0)) * t_step();
}

void GridSpec::validate(std::size_t cell_budget) const {
  if (n_y < 2 || n_t < 2) fail(ErrorKind::Domain, "grid needs at least 2 nodes per axis");
  if (!(y_max > y_lo) || y_lo < 0.0) fail(ErrorKind::Domain, "grid needs 0 <= y_lo < y_max");
  if (!(t_hi > t_lo)) fail(ErrorKind::Domain, "grid needs t_lo < t_hi");
  const auto cells = static_cast<std::size_t>(n_y) * static_cast<std::size_t>(n_t);
  if (cells > cell_budget) fail(ErrorKind::CellBudget, "grid exceeds the cell budget");
}

// ---------------------------------------------------------------- v_p, E, U

double v_p(double t, double p) {
  if (!(p >= 2.0)) fail(ErrorKind::Domain, "v_p is defined for p >= 2");
  double a = std::fabs(std::remainder(t, 2.0 * pi));
  if (a > 0.5 * pi) a = pi - a;
  if (a > 0.5 * pi - pi / p) return -std::cos(p * (0.5 * pi - a));
  return std::max(std::fabs(std::cos(p * (0.5 * pi - a))), std::fabs(std::cos(p * (0.5 * pi + a))));
}

double minorant_E(cplx z, cplx w, double p) {
  if (z == cplx{} || w == cplx{}) return 0.0;
  return std::pow(std::abs(z) * std::abs(w), 0.5 * p) * v_p(0.5 * (std::arg(z) + std::arg(w)), p);
}

double minorant_U(cplx z, double p) {
  if (z == cplx{}) return 0.0;
  return std::pow(std::abs(z), p) * v_p(std::arg(z), p);
}

VerificationReport subharmonic_mean_check(double p, int trials, double radius, std::uint64_t seed,
                                          std::optional<cplx> pinned_center, double tol) {
  if (!(p >= 2.0)) fail(ErrorKind::Domain, "subharmonic_mean_check requires p >= 2");
  if (trials < 1) fail(ErrorKind::Domain, "subharmonic_mean_check needs at least one trial");
  if (!(radius > 0.0) || radius >= 1.0) fail(ErrorKind::Domain, "radius must lie in (0, 1)");
  constexpr int kNodes = 64;
  VerificationReport rep;
  rep.check_id = "subharmonic-mean";
  rep.params = ExponentPair::make(p, critical_order(p));
  rep.grid = GridSpec{0.0, radius, trials, 0.0, 2.0 * pi, kNodes, false};
  rep.tol = tol;
  rep.min_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < trials; ++k) {
    cplx z0;
    if (pinned_center) {
      z0 = *pinned_center;
    } else {
      // Uniform in the disk of radius 1 - radius so the sample circle stays inside.
      const double rho = (1.0 - radius) * std::sqrt(unif(rng));
      z0 = std::polar(rho, 2.0 * pi * unif(rng) - pi);
    }
    double acc = 0.0;
    for (int j = 0; j < kNodes; ++j) acc += minorant_U(z0 + std::polar(radius, 2.0 * pi * j / kNodes), p);
    const double margin = acc / kNodes - minorant_U(z0, p);
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.argmin_y = std::abs(z0);  // polar radius of the center
      rep.argmin_t = std::arg(z0);  // polar angle of the center
    }
    if (margin < -tol) ++rep.violations;
  }
  return rep;
}

// ---------------------------------------------------------------- master functions

std::string_view to_string(MasterBranch b) noexcept {
  switch (b) {
    case MasterBranch::CriticalGe2: return "critical-ge2";
    case MasterBranch::SupercriticalGe2: return "supercritical-ge2";
    case MasterBranch::CriticalLt2: return "critical-lt2";
  }
  return "unknown";
}

namespace {

MasterContext build_context(MasterBranch branch, double p, double s, bool allow_subcritical) {
  MasterContext ctx;
  ctx.branch = branch;
  ctx.pair = ExponentPair::make(p, s);
  const double star = critical_order(p);
  const double half = pi / (2.0 * p);
  switch (branch) {
    case MasterBranch::CriticalGe2: {
      if (p < 2.0) fail(ErrorKind::Domain, "critical-ge2 branch requires p >= 2");
      const bool ok = allow_subcritical ? s <= star + kEpsCrit : std::fabs(s - star) <= kEpsCrit;
      if (!ok) fail(ErrorKind::ParameterMismatch, "critical-ge2 branch requires s = csc^2(pi/2p)");
      const double sn = std::sin(half);
      ctx.C = std::pow(2.0 * sn * sn, -0.5 * p);
      ctx.D = 1.0 / std::tan(half);
      ctx.y_tilde = 0.0;
      ctx.t_hi = 2.0 * pi / p;
      break;
    }
    case MasterBranch::SupercriticalGe2: {
      if (p < 2.0) fail(ErrorKind::Domain, "supercritical-ge2 branch requires p >= 2");
      if (!(s > star + kEpsCrit))
        fail(ErrorKind::ParameterMismatch, "supercritical-ge2 branch requires s > csc^2(pi/2p)");
      const SharpConstantBundle b = compute_constants(p, s);
      if (!b.attained) fail(ErrorKind::Domain, "supercritical-ge2: maximum of K is not attained");
      ctx.C = b.k_max;
      ctx.D = b.D_ps;
      ctx.y_tilde = b.y_tilde;
      ctx.t_hi = 2.0 * pi / p;
      break;
    }
    case MasterBranch::CriticalLt2: {
      if (!(p < 2.0)) fail(ErrorKind::Domain, "critical-lt2 branch requires 1 < p < 2");
      if (std::fabs(s - star) > kEpsCrit)
        fail(ErrorKind::ParameterMismatch, "critical-lt2 branch requires s = sec^2(pi/2p)");
      const double cs = std::cos(half);
      ctx.C = std::pow(2.0 * cs * cs, -0.5 * p);
      ctx.D = std::tan(half);
      ctx.y_tilde = 0.0;
      ctx.t_hi = pi;
      break;
    }
  }
  return ctx;
}

bool is_ge2(MasterBranch b) { return b != MasterBranch::CriticalLt2; }

// ((|z|^s + |w|^s)/2)^{p/s} evaluated through the larger magnitude.
double power_mean_p(double a, double b, double p, double s) {
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  const double q = std::min(a, b) / m;
  return std::pow(m, p) * std::pow(0.5 * (1.0 + std::pow(q, s)), p / s);
}

double cosh_pow(double y, double p, double s) {
  return std::exp((p / s) * num::logcosh(0.5 * s * y));
}

}  // namespace

MasterContext MasterContext::make(MasterBranch branch, double p, double s) {
  return build_context(branch, p, s, false);
}

MasterContext MasterContext::make_for_margin(MasterBranch branch, double p, double s) {
  return build_context(branch, p, s, true);
}

double phi_master(double y, double t, const MasterContext& ctx) {
  const double p = ctx.pair.p;
  const double lead = cosh_pow(y, p, ctx.pair.s);
  if (is_ge2(ctx.branch))
    return -lead + ctx.C * std::pow(num::cosh_minus_cos(y, t), 0.5 * p) + ctx.D * std::cos(0.5 * t * p);
  return -lead + ctx.C * std::pow(num::cosh_minus_cos(y, pi - t), 0.5 * p) - ctx.D * std::cos(0.5 * t * p);
}

double phi_master(double y, double t, const ExponentPair& pair, MasterBranch branch) {
  return phi_master(y, t, MasterContext::make(branch, pair.p, pair.s));
}

double elementary_margin(cplx z, cplx w, const MasterContext& ctx) {
  const double p = ctx.pair.p;
  const double s = ctx.pair.s;
  const double lhs = power_mean_p(std::abs(z), std::abs(w), p, s);
  const double c_l = std::pow(2.0, -0.5 * p) * ctx.C;
  const double sum = c_l * std::pow(std::abs(z + std::conj(w)), p);
  if (is_ge2(ctx.branch)) return sum - ctx.D * minorant_E(z, w, p) - lhs;
  // Principal branch of (zw)^{p/2}, argument in (-pi, pi].
  const cplx zw = z * w;
  double re = 0.0;
  if (zw != cplx{}) {
    double th = std::arg(zw);
    if (th <= -pi) th = pi;
    re = std::pow(std::abs(zw), 0.5 * p) * std::cos(0.5 * p * th);
  }
  return sum - ctx.D * re - lhs;
}

double elementary_margin(cplx z, cplx w, const ExponentPair& pair, MasterBranch branch) {
  return elementary_margin(z, w, MasterContext::make_for_margin(branch, pair.p, pair.s));
}

double reduced_margin(double y, double t, const MasterContext& ctx) {
  const double r = std::exp(-y);
  const double angle = is_ge2(ctx.branch) ? pi - t : t;
  const cplx z = std::polar(r, angle);
  return std::exp(0.5 * ctx.pair.p * y) * elementary_margin(z, cplx{1.0, 0.0}, ctx);
}

GridSpec default_grid(MasterBranch branch, double p, int n_y, int n_t, double y_max) {
  GridSpec g;
  g.y_lo = 0.0;
  g.y_max = y_max;
  g.n_y = n_y;
  g.t_lo = 0.0;
  g.t_hi = is_ge2(branch) ? 2.0 * pi / p : pi;
  g.n_t = n_t;
  return g;
}

VerificationReport verify_region(MasterBranch branch, const ExponentPair& pair, const GridSpec& grid,
                                 const RegionOptions& opt) {
  grid.validate(opt.cell_budget);
  const MasterContext ctx = MasterContext::make(branch, pair.p, pair.s);
  const double p = pair.p;
  const bool ge2 = is_ge2(branch);

  // Separable pieces: cosh y -+ cos t = 2 sinh^2(y/2) + 2 q(t).
  std::vector<double> lead(grid.n_y), sh2(grid.n_y), q(grid.n_t), tail(grid.n_t);
  for (int i = 0; i < grid.n_y; ++i) {
    const double y = grid.y_at(i);
    lead[i] = cosh_pow(y, p, pair.s);
    const double sh = std::sinh(0.5 * y);
    sh2[i] = sh * sh;
  }
  for (int j = 0; j < grid.n_t; ++j) {
    const double t = grid.t_at(j);
    const double h = ge2 ? std::sin(0.5 * t) : std::cos(0.5 * t);
    q[j] = h * h;
    tail[j] = (ge2 ? ctx.D : -ctx.D) * std::cos(0.5 * t * p);
  }

  VerificationReport rep;
  rep.check_id = std::string("master-") + std::string(to_string(branch));
  rep.params = ctx.pair;
  rep.grid = grid;
  rep.tol = opt.tol;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const double half_p = 0.5 * p;
  for (int i = 0; i < grid.n_y; ++i) {
    const double li = lead[i];
    const double si = sh2[i];
    for (int j = 0; j < grid.n_t; ++j) {
      const double v = -li + ctx.C * std::pow(2.0 * (si + q[j]), half_p) + tail[j];
      if (v < rep.min_margin) {
        rep.min_margin = v;
        rep.argmin_y = grid.y_at(i);
        rep.argmin_t = grid.t_at(j);
      }
      if (v < -opt.tol) ++rep.violations;
    }
  }

  // Reduction consistency at random cells.
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> iy(0, grid.n_y - 1), it(0, grid.n_t - 1);
  for (int k = 0; k < opt.reduction_samples; ++k) {
    const int i = iy(rng);
    const int j = it(rng);
    const double y = grid.y_at(i);
    const double t = grid.t_at(j);
    const double direct = phi_master(y, t, ctx);
    const double via = reduced_margin(y, t, ctx);
    const double scale = std::max({1.0, lead[i], ctx.C * std::pow(2.0 * (sh2[i] + q[j]), half_p)});
    rep.reduction_max_rel_error = std::max(rep.reduction_max_rel_error, std::fabs(direct - via) / scale);
  }
  rep.reduction_samples = static_cast<std::size_t>(std::max(opt.reduction_samples, 0));
  return rep;
}

ZeroLocation locate_zero(MasterBranch branch, const ExponentPair& pair, const GridSpec& grid) {
  grid.validate();
  const MasterContext ctx = MasterContext::make(branch, pair.p, pair.s);
  ZeroLocation z;
  z.y0 = ctx.y_tilde;
  z.t0 = pi / pair.p;
  z.value_at_zero = phi_master(z.y0, z.t0, ctx);
  z.min_outside = std::numeric_limits<double>::infinity();
  const double hy = grid.y_step();
  const double ht = grid.t_step();
  for (int i = 0; i < grid.n_y; ++i) {
    const double y = grid.y_at(i);
    const bool near_y = std::fabs(y - z.y0) <= hy;
    for (int j = 0; j < grid.n_t; ++j) {
      const double t = grid.t_at(j);
      if (near_y && std::fabs(t - z.t0) <= ht) continue;
      const double v = phi_master(y, t, ctx);
      if (v < z.min_outside) {
        z.min_outside = v;
        z.argmin_outside_y = y;
        z.argmin_outside_t = t;
      }
    }
  }
  return z;
}

VerificationReport spot_check_plane(MasterBranch branch, const ExponentPair& pair, int samples,
                                    std::uint64_t seed, double tol) {
  if (samples < 1) fail(ErrorKind::Domain, "spot check needs at least one sample");
  const MasterContext ctx = MasterContext::make_for_margin(branch, pair.p, pair.s);
  VerificationReport rep;
  rep.check_id = std::string("spot-plane-") + std::string(to_string(branch));
  rep.params = ctx.pair;
  rep.grid = GridSpec{-3.0, 3.0, samples, -pi, pi, 1, false};
  rep.tol = tol;
  rep.min_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logmag(-3.0, 3.0), ang(-pi, pi);
  for (int k = 0; k < samples; ++k) {
    const cplx z = std::polar(std::exp(logmag(rng)), ang(rng));
    const cplx w = std::polar(std::exp(logmag(rng)), ang(rng));
    const double scale = std::pow(std::max(std::abs(z), std::abs(w)), pair.p);
    const double m = elementary_margin(z, w, ctx) / scale;
    if (m < rep.min_margin) {
      rep.min_margin = m;
      rep.argmin_y = std::log(std::abs(z) / std::abs(w));  // log modulus ratio
      rep.argmin_t = std::remainder(std::arg(z) + std::arg(w), 2.0 * pi);  // angle sum
    }
    if (m < -tol) ++rep.violations;
  }
  return rep;
}

}  // namespace rsharp
