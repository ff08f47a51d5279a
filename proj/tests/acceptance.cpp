// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsharp/constants.hpp"
#include "rsharp/error.hpp"
#include "rsharp/lemmas.hpp"
#include "rsharp/minorant.hpp"
#include "rsharp/registry.hpp"
#include "rsharp/report.hpp"
#include "rsharp/spectral.hpp"

using namespace rsharp;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;

  void expect(bool cond, std::string line) {
    ok = ok && cond;
    lines.push_back((cond ? "ok   " : "FAIL ") + std::move(line));
  }
};

CircleSignal monomial(std::size_t N, long n) {
  std::vector<cplx> spec(N, cplx(0.0, 0.0));
  spec[static_cast<std::size_t>(n + static_cast<long>(N / 2))] = 1.0;
  return CircleSignal::from_spectrum(std::move(spec));
}

// ---- 1
Outcome closed_form_constants() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double p : {2.0, 2.5, 3.0, 4.0, 8.0})
    for (double s : {1.0, 2.0, critical_order(p)}) {
      const double expect = std::pow(2.0, 1.0 / s) / (2.0 * std::sin(pi / (2.0 * p)));
      const double e = rel(A_constant(p, s), expect);
      worst = std::max(worst, e);
      if (e > 1e-10) o.expect(false, fmt::format("p={} s={:.12g} rel err {:.3e}", p, s, e));
    }
  const double dt = seconds_since(t0);
  o.expect(worst <= 1e-10, fmt::format("15 pairs, max rel err {:.3e}", worst));
  o.expect(dt < 1.0, fmt::format("runtime {:.4f} s", dt));
  return o;
}

// ---- 2
Outcome kalaj_point() {
  Outcome o;
  const double expect = 1.0 / (std::sqrt(2.0) * std::sin(pi / 8.0));
  const double e = rel(A_constant(4.0, 2.0), expect);
  o.expect(e <= 1e-10, fmt::format("A_(4,2) = {:.15g}, rel err {:.3e}", A_constant(4.0, 2.0), e));
  return o;
}

// ---- 3
Outcome large_s_limit() {
  Outcome o;
  const auto t0 = Clock::now();
  for (double p : {2.5, 3.0, 4.0}) {
    const double lim = 1.0 / std::sin(pi / p);
    const double e = rel(A_constant(p, 1e4), lim);
    o.expect(e <= 1e-3, fmt::format("p={} A_(p,1e4)={:.10g} limit={:.10g} rel {:.3e}", p, A_constant(p, 1e4), lim, e));
  }
  const double dt = seconds_since(t0);
  o.expect(dt < 1.0, fmt::format("runtime {:.4f} s", dt));
  return o;
}

// ---- 4
Outcome sharpness_consistency() {
  Outcome o;
  const std::vector<std::pair<double, double>> pairs = {
      {1.1, 1.0},  {1.1, critical_order(1.1)},   {1.25, 2.0}, {1.25, critical_order(1.25)},
      {4.0 / 3.0, 1.5}, {4.0 / 3.0, critical_order(4.0 / 3.0)}, {1.5, 1.0}, {1.5, critical_order(1.5)},
      {2.0, 1.0},  {2.0, 2.0},  {2.5, 1.0}, {2.5, critical_order(2.5)}, {2.5, 10.0}, {3.0, 2.0},
      {3.0, 8.0},  {4.0, 2.0},  {4.0, critical_order(4.0)}, {4.0, 10.0}, {6.0, 20.0}, {8.0, 40.0}};
  double worst = 0.0;
  int sub = 0, crit = 0, super = 0;
  for (auto [p, s] : pairs) {
    const SharpConstantBundle b = compute_constants(p, s);
    const double formula = std::pow(2.0, 1.0 / s) * std::pow(b.c_ps, 1.0 / p);
    const double e = rel(sharp_lower_bound(p, s).value, formula);
    worst = std::max(worst, e);
    if (e > 1e-10) o.expect(false, fmt::format("p={} s={:.12g} rel err {:.3e}", p, s, e));
    switch (b.pair.regime) {
      case Regime::Subcritical: ++sub; break;
      case Regime::Critical: ++crit; break;
      case Regime::Supercritical: ++super; break;
    }
  }
  o.expect(worst <= 1e-10, fmt::format("{} pairs ({} sub, {} critical, {} super), max rel err {:.3e}",
                                       pairs.size(), sub, crit, super, worst));
  return o;
}

// ---- 5
Outcome master_grids() {
  Outcome o;
  std::vector<std::tuple<MasterBranch, double, double>> cases;
  for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 8.0}) cases.emplace_back(MasterBranch::CriticalGe2, p, critical_order(p));
  for (auto [p, s] : {std::pair{3.0, 8.0}, std::pair{4.0, 10.0}, std::pair{6.0, 20.0}})
    cases.emplace_back(MasterBranch::SupercriticalGe2, p, s);
  for (double p : {1.1, 1.25, 4.0 / 3.0}) cases.emplace_back(MasterBranch::CriticalLt2, p, critical_order(p));

  for (auto [branch, p, s] : cases) {
    const ExponentPair pair = ExponentPair::make(p, s);
    const GridSpec grid = default_grid(branch, p, 2000, 2000, 10.0);
    const auto t0 = Clock::now();
    const VerificationReport rep = verify_region(branch, pair, grid);
    const double dt = seconds_since(t0);
    std::string zero;
    bool zero_ok = true;
    if (p == 2.0) {
      // the master function vanishes identically here
      zero = "zero set is the whole strip";
    } else {
      const ZeroLocation z = locate_zero(branch, pair, grid);
      zero_ok = z.unique();
      zero = fmt::format("zero at (y={:.6g}, t=pi/p) value {:.2e}, min beyond one cell {:.3e}", z.y0,
                         z.value_at_zero, z.min_outside);
    }
    o.expect(rep.passed() && dt < 30.0 && zero_ok,
             fmt::format("{} p={:.6g} s={:.6g}: violations {}, min {:.3e}, reduction err {:.1e}, {:.2f} s; {}",
                         to_string(branch), p, s, rep.violations, rep.min_margin, rep.reduction_max_rel_error, dt,
                         zero));
  }
  return o;
}

// Largest |endpoint_margin| anywhere in a nested lemma report.
double worst_endpoint(const nlohmann::json& j) {
  double w = 0.0;
  if (j.contains("endpoint_margin") && j["endpoint_margin"].is_number())
    w = std::fabs(j["endpoint_margin"].get<double>());
  if (j.contains("parts"))
    for (const auto& part : j["parts"]) w = std::max(w, worst_endpoint(part));
  return w;
}

// ---- 6
Outcome lemma_suite() {
  Outcome o;
  const double crit = std::numeric_limits<double>::quiet_NaN();
  auto tasks = expand_tasks({"all"}, {2.5, 3.0, 4.0, 5.0, 6.0, 8.0}, {crit, 8.0, 10.0, 20.0, 40.0});
  const auto lt2 = expand_tasks({"all"}, {1.1, 1.2, 1.25, 4.0 / 3.0}, {crit});
  tasks.insert(tasks.end(), lt2.begin(), lt2.end());
  const auto t0 = Clock::now();
  const auto out = run_tasks(tasks, CheckConfig{});
  std::size_t failed = 0;
  double endpoint = 0.0;
  for (const auto& c : out) {
    if (c.detail_json.find("\"endpoint_margin\"") != std::string::npos)
      endpoint = std::max(endpoint, worst_endpoint(nlohmann::json::parse(c.detail_json)));
    if (!c.succeeded) {
      ++failed;
      o.expect(false, fmt::format("{} p={:.6g} s={:.6g}: min margin {:.5g} at t={:.5g}; {}", c.row.check_id, c.row.p,
                                  c.row.s, c.row.min_margin, c.row.argmin_t, c.row.note));
    }
  }
  o.expect(failed == 0, fmt::format("{} checks over the lattice, {} failed, {:.2f} s", out.size(), failed,
                                    seconds_since(t0)));
  o.expect(endpoint <= 1e-8, fmt::format("max |endpoint margin| {:.3e}", endpoint));
  return o;
}

// ---- 7
Outcome falsification() {
  Outcome o;
  const LemmaCheckResult lt = falsify_beyond_cutoff(1.5, critical_order(1.5));
  double y = std::nan(""), t = std::nan("");
  for (const auto& [k, v] : lt.argmin) (k == "y" ? y : t) = v;
  o.expect(lt.min_margin < -1e-6,
           fmt::format("p=1.5 critical: min master value {:.6g} at (y={:.4g}, t={:.4g})", lt.min_margin, y, t));

  const KMaximum km = maximize_K(3.0, 8.0);
  const double gap = km.C - K_value(0.0, 3.0, 8.0);
  o.expect(km.attained && km.y_tilde > 0.0 && gap > 1e-3,
           fmt::format("(3,8): y~={:.6g}, K(y~)-K(0)={:.6g}", km.y_tilde, gap));
  return o;
}

// ---- 8
Outcome spectral_identities() {
  Outcome o;
  const std::size_t N = 1 << 12;
  double parseval = 0.0, trip = 0.0;
  bool exact = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const CircleSignal f = random_band_limited(N, 500, seed, seed % 2 ? 0.5 : 0.0);
    const CircleSignal P = project_plus(f), M = project_minus(f);
    exact = exact && project_plus(P).spectrum() == P.spectrum() && project_minus(M).spectrum() == M.spectrum();
    for (std::size_t k = 0; k < N; ++k) {
      exact = exact && P.spectrum()[k] + M.spectrum()[k] == f.spectrum()[k];
      exact = exact && (P.spectrum()[k] == cplx{} || M.spectrum()[k] == cplx{});
    }
    const double total = std::pow(lp_norm(f, 2.0), 2);
    const double split = std::pow(lp_norm(P, 2.0), 2) + std::pow(lp_norm(M, 2.0), 2);
    parseval = std::max(parseval, std::fabs(total - split) / total);
    const auto back = fourier_synthesize(fourier_analyze(f.samples(), f.sigma()), f.sigma());
    for (std::size_t j = 0; j < N; ++j) trip = std::max(trip, std::abs(back[j] - f.samples()[j]));
  }
  o.expect(exact, "idempotence and complementarity exact in the spectrum (100 signals)");
  o.expect(parseval <= 1e-10, fmt::format("Parseval split max rel err {:.3e}", parseval));
  o.expect(trip <= 1e-12, fmt::format("DFT round trip max err {:.3e}", trip));
  return o;
}

// ---- 9
Outcome empirical_bound() {
  Outcome o;
  for (auto [p, s] : {std::pair{2.0, 2.0}, std::pair{4.0, 2.0}, std::pair{4.0, critical_order(4.0)},
                      std::pair{1.25, critical_order(1.25)}}) {
    const double A = A_constant(p, s);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed)
      worst = std::max(worst, projection_ratio(random_band_limited(1024, 40, seed), p, s));
    o.expect(worst <= A * (1.0 + 1e-6),
             fmt::format("p={:.6g} s={:.6g}: max ratio {:.6g} vs A {:.6g} over 200 signals", p, s, worst, A));
  }
  std::vector<cplx> spec(1024, cplx(0.0, 0.0));
  spec[512 + 1] = 1.0;
  spec[512 - 1] = 1.0;
  const double eq = projection_ratio(CircleSignal::from_spectrum(spec), 2.0, 2.0);
  o.expect(std::fabs(eq - 1.0) <= 1e-12, fmt::format("zeta + conj(zeta) at (2,2): ratio - 1 = {:.3e}", eq - 1.0));
  return o;
}

// ---- 10
Outcome extremal_projections() {
  Outcome o;
  const std::size_t N = 1 << 14;
  const SweepSetup st = sharpness_setup(3.0, 2.0, 0.0);
  for (auto [a, b] : {std::pair{st.alpha, st.beta}, std::pair{0.3, 0.7}, std::pair{1.0, -0.5}}) {
    const ExtremalFamilyParams prm{0.2, a, b, 0.95};
    prm.validate(3.0);
    const ExtremalPair ex = extremal_signal(prm, N);
    const ProjectionPair cf = closed_form_projections(prm, N);
    const CircleSignal P = project_plus(ex.f), M = project_minus(ex.f);
    double np = 0.0, dp = 0.0, nm = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      np += std::norm(P.samples()[j] - cf.plus.samples()[j]);
      dp += std::norm(cf.plus.samples()[j]);
      nm += std::norm(M.samples()[j] - cf.minus.samples()[j]);
      dm += std::norm(cf.minus.samples()[j]);
    }
    const double ep = std::sqrt(np / dp), em = dm > 0.0 ? std::sqrt(nm / dm) : std::sqrt(nm);
    o.expect(ep <= 1e-6 && em <= 1e-6,
             fmt::format("alpha={:.3g} beta={:.3g}: rel L2 P+ {:.3e}, P- {:.3e}", a, b, ep, em));
  }
  return o;
}

// ---- 11
Outcome sharpness_sweep_check() {
  Outcome o;
  const auto rows = sharpness_sweep(3.0, 2.0, {0.27, 0.30, 0.32}, 0.0, 1 << 14);
  for (const auto& r : rows)
    o.lines.push_back(fmt::format("     gamma={:.2f} ratio={:.8f} grid_ratio={:.8f} target={:.8f}", r.gamma, r.ratio,
                                  r.grid_ratio, r.target));
  const bool mono = rows.size() == 3 && rows[0].ratio < rows[1].ratio && rows[1].ratio < rows[2].ratio;
  o.expect(mono, "ratio strictly increasing in gamma");
  o.expect(!rows.empty() && rows.back().ratio >= 0.9 * std::sqrt(2.0),
           fmt::format("final ratio {:.6f} >= 0.9 sqrt 2 = {:.6f}", rows.empty() ? 0.0 : rows.back().ratio,
                       0.9 * std::sqrt(2.0)));
  return o;
}

// ---- 12
Outcome isoperimetric() {
  Outcome o;
  double worst = 0.0;
  bool within = true;
  for (double p : {2.0, 3.0})
    for (long n : {1L, 2L, 3L}) {
      const IsoperimetricResult r = isoperimetric_ratio(monomial(256, n), p);
      worst = std::max(worst, std::fabs(r.value - 1.0 / (p * n + 1.0)));
      within = within && r.within();
    }
  o.expect(worst <= 1e-8, fmt::format("zeta^n values vs 1/(pn+1): max err {:.3e}", worst));
  double top = 0.0;
  for (double p : {2.0, 3.0, 4.0})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const IsoperimetricResult r = isoperimetric_ratio(random_band_limited(512, 20, seed), p);
      within = within && r.within();
      top = std::max(top, r.value / r.bound);
    }
  o.expect(within, fmt::format("all tested values within the bound (largest value/bound {:.4f})", top));
  const double one = isoperimetric_ratio(monomial(64, 0), 3.0).value;
  o.expect(one == 1.0, fmt::format("f = 1 gives {:.17g}", one));
  return o;
}

// ---- 13 (the runtime half is checked after everything else has run)
Outcome reproducibility() {
  Outcome o;
  auto tasks = expand_tasks({"all"}, {4.0, 1.25}, {std::nan("")});
  const auto witness = expand_tasks({"falsify-p-gt-4-3"}, {1.5}, {std::nan("")});
  tasks.insert(tasks.end(), witness.begin(), witness.end());
  CheckConfig cfg;
  cfg.grid_ny = 400;
  cfg.grid_nt = 400;
  auto render = [&](unsigned threads) {
    std::vector<CheckRow> rows;
    std::string details;
    for (const auto& c : run_tasks(tasks, cfg, threads)) {
      rows.push_back(c.row);
      details += c.detail_json;
    }
    return to_csv(rows) + to_json(rows) + details;
  };
  const std::string a = render(1), b = render(1), c = render(4);
  o.expect(a == b && a == c, fmt::format("check reports byte-identical across runs and thread counts ({} bytes)",
                                         a.size()));
  auto ratios = [] {
    std::string s;
    for (std::uint64_t k = 0; k < 50; ++k)
      s += format_double(projection_ratio(random_band_limited(1024, 32, 7 + k), 4.0, 2.0)) + "\n";
    return s;
  };
  o.expect(ratios() == ratios(), "seeded ratio experiment byte-identical");
  return o;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form constants", closed_form_constants},
      {"A_(4,2) at s = 2", kalaj_point},
      {"large-s limit", large_s_limit},
      {"sharp lower bound matches A", sharpness_consistency},
      {"master inequality grids", master_grids},
      {"lemma suite on the parameter lattice", lemma_suite},
      {"falsification beyond the cutoffs", falsification},
      {"spectral identities", spectral_identities},
      {"empirical norm bound", empirical_bound},
      {"closed-form vs spectral projections", extremal_projections},
      {"sharpness sweep", sharpness_sweep_check},
      {"isoperimetric ratio", isoperimetric},
      {"reproducibility", reproducibility}};

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.expect(false, fmt::format("exception: {}", e.what()));
    }
    if (k + 1 == criteria.size()) {
      const double total = seconds_since(start);
      o.expect(total < 600.0, fmt::format("full acceptance run {:.1f} s", total));
    }
    fmt::print("[{}] {} {}\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first);
    for (const auto& line : o.lines) fmt::print("       {}\n", line);
    std::fflush(stdout);
    failures += o.ok ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
