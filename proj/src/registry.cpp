#include "rsharp/registry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <thread>

#include "rsharp/constants.hpp"
#include "rsharp/error.hpp"
#include "rsharp/lemmas.hpp"
#include "rsharp/minorant.hpp"

namespace rsharp {

namespace {

bool on_cutoff(double p, double s) { return std::fabs(s - critical_order(p)) <= kEpsCrit; }
bool beyond_cutoff(double p, double s) { return s > critical_order(p) + kEpsCrit; }
bool at_or_beyond(double p, double s) { return s >= critical_order(p) - kEpsCrit; }

struct Entry {
  std::string id;
  bool falsification = false;
  std::function<bool(double, double)> applies;
  std::function<CheckOutcome(double, double, const CheckConfig&)> run;
};

CheckOutcome from_report(const VerificationReport& r) {
  return {to_row(r), to_json(r), r.passed()};
}

CheckOutcome from_lemma(const LemmaCheckResult& r, double p, double s) {
  return {to_row(r, p, s), to_json(r), r.succeeded()};
}

CheckOutcome master(MasterBranch b, double p, double s, const CheckConfig& cfg) {
  GridSpec g = default_grid(b, p, cfg.grid_ny.value_or(2000), cfg.grid_nt.value_or(2000), cfg.y_max.value_or(10.0));
  RegionOptions opt;
  if (cfg.tol) opt.tol = *cfg.tol;
  return from_report(verify_region(b, ExponentPair::make(p, s), g, opt));
}

CheckOutcome spot(MasterBranch b, double p, double s, const CheckConfig& cfg) {
  return from_report(spot_check_plane(b, ExponentPair::make(p, s), 10000, cfg.seed, cfg.tol.value_or(kMarginTol)));
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    using B = MasterBranch;
    std::vector<Entry> t;
    auto crit_ge2 = [](double p, double s) { return p >= 2.0 && on_cutoff(p, s); };
    auto super_ge2 = [](double p, double s) { return p > 2.0 && beyond_cutoff(p, s); };
    auto crit_lt2 = [](double p, double s) { return p > 1.0 && p <= 4.0 / 3.0 + 1e-12 && on_cutoff(p, s); };

    t.push_back({"master-critical-ge2", false, crit_ge2,
                 [](double p, double s, const CheckConfig& c) { return master(B::CriticalGe2, p, s, c); }});
    t.push_back({"master-supercritical-ge2", false, super_ge2,
                 [](double p, double s, const CheckConfig& c) { return master(B::SupercriticalGe2, p, s, c); }});
    t.push_back({"master-critical-lt2", false, crit_lt2,
                 [](double p, double s, const CheckConfig& c) { return master(B::CriticalLt2, p, s, c); }});
    t.push_back({"spot-plane-critical-ge2", false, crit_ge2,
                 [](double p, double s, const CheckConfig& c) { return spot(B::CriticalGe2, p, s, c); }});
    t.push_back({"spot-plane-supercritical-ge2", false, super_ge2,
                 [](double p, double s, const CheckConfig& c) { return spot(B::SupercriticalGe2, p, s, c); }});
    t.push_back({"spot-plane-critical-lt2", false, crit_lt2,
                 [](double p, double s, const CheckConfig& c) { return spot(B::CriticalLt2, p, s, c); }});
    t.push_back({"subharmonic-mean", false, [](double p, double) { return p >= 2.0; },
                 [](double p, double s, const CheckConfig& c) {
                   auto r = subharmonic_mean_check(p, 2000, 0.5, c.seed, std::nullopt, c.tol.value_or(kMarginTol));
                   r.params = ExponentPair::make(p, s);
                   return from_report(r);
                 }});
    t.push_back({"lemma3-sine-ratio-lower", false, [](double p, double) { return p >= 2.0; },
                 [](double p, double s, const CheckConfig& c) {
                   return from_lemma(check_sine_ratio_lower(p, 100000, c.tol.value_or(kLemmaTol)), p, s);
                 }});
    t.push_back({"claim1-sine-ratio-monotone", false, [](double p, double) { return p > 2.0; },
                 [](double p, double s, const CheckConfig&) {
                   return from_lemma(check_sine_ratio_monotone(1.0, 0.5 * p), p, s);
                 }});
    t.push_back({"lemma4-hyperbolic-threshold", false,
                 [](double p, double s) { return p >= 4.0 && at_or_beyond(p, s); },
                 [](double p, double s, const CheckConfig&) {
                   return from_lemma(check_hyperbolic_threshold(p, s), p, s);
                 }});
    t.push_back({"coscosh-bound", false, [](double, double) { return true; },
                 [](double p, double s, const CheckConfig&) { return from_lemma(check_cosh_cos(), p, s); }});
    t.push_back({"G-critical-bound", false, crit_ge2,
                 [](double p, double s, const CheckConfig&) {
                   return from_lemma(check_G_bounds(p, s, GBoundMode::CriticalBound), p, s);
                 }});
    t.push_back({"G-supercritical-upper", false, super_ge2,
                 [](double p, double s, const CheckConfig&) {
                   return from_lemma(check_G_bounds(p, s, GBoundMode::SupercriticalUpper), p, s);
                 }});
    t.push_back({"G-supercritical-lower", false, super_ge2,
                 [](double p, double s, const CheckConfig&) {
                   return from_lemma(check_G_bounds(p, s, GBoundMode::SupercriticalLower), p, s);
                 }});
    t.push_back({"lemma5-sign-pattern", false, [](double p, double s) { return p > 2.0 && at_or_beyond(p, s); },
                 [](double p, double s, const CheckConfig&) { return from_lemma(check_sign_pattern(p, s), p, s); }});
    t.push_back({"lemma6-phi-monotone", false, [](double p, double s) { return p > 2.0 && at_or_beyond(p, s); },
                 [](double p, double s, const CheckConfig&) {
                   if (!(p > 2.0)) fail(ErrorKind::Domain, "lemma6-phi-monotone requires p > 2");
                   return from_lemma(check_phi_monotone(p, s), p, s);
                 }});
    t.push_back({"lemma10-phi-monotone", false, [](double p, double s) { return p > 1.0 && p < 2.0 && on_cutoff(p, s); },
                 [](double p, double s, const CheckConfig&) {
                   if (!(p < 2.0)) fail(ErrorKind::Domain, "lemma10-phi-monotone requires p < 2");
                   return from_lemma(check_phi_monotone(p, s), p, s);
                 }});
    t.push_back({"descent-along-y_p", false, [](double p, double s) { return p > 2.0 && at_or_beyond(p, s); },
                 [](double p, double s, const CheckConfig&) { return from_lemma(check_descent(p, s), p, s); }});
    t.push_back({"lemma7-sine-ratio-upper", false, [](double p, double) { return p > 1.0 && p < 2.0; },
                 [](double p, double s, const CheckConfig&) { return from_lemma(check_sine_ratio_upper(p), p, s); }});
    t.push_back({"psi-suite", false, [](double p, double) { return p > 1.0 && p <= 4.0 / 3.0 + 1e-12; },
                 [](double p, double s, const CheckConfig&) { return from_lemma(psi_suite(p), p, s); }});

    auto falsify = [](double p, double s, const CheckConfig& c) {
      try {
        const LemmaCheckResult r =
            falsify_beyond_cutoff(p, s, c.grid_ny.value_or(601), c.grid_nt.value_or(601), c.y_max.value_or(3.0));
        return from_lemma(r, p, s);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::WitnessNotFound) throw;
        LemmaCheckResult r;
        r.lemma_id = p >= 2.0 ? "falsify-supercritical" : "falsify-p-gt-4-3";
        r.falsification = true;
        r.passed = true;  // no violation found, so the search failed
        r.min_margin = 0.0;
        r.note = e.what();
        return from_lemma(r, p, s);
      }
    };
    t.push_back({"falsify-p-gt-4-3", true,
                 [](double p, double s) { return p > 4.0 / 3.0 && p < 2.0 && on_cutoff(p, s); },
                 [falsify](double p, double s, const CheckConfig& c) {
                   if (!(p > 4.0 / 3.0 && p < 2.0)) fail(ErrorKind::Domain, "falsify-p-gt-4-3 requires 4/3 < p < 2");
                   return falsify(p, s, c);
                 }});
    t.push_back({"falsify-supercritical", true, super_ge2,
                 [falsify](double p, double s, const CheckConfig& c) {
                   if (!(p >= 2.0)) fail(ErrorKind::Domain, "falsify-supercritical requires p >= 2");
                   return falsify(p, s, c);
                 }});
    return t;
  }();
  return table;
}

const Entry& find(const std::string& id) {
  for (const auto& e : entries())
    if (e.id == id) return e;
  fail(ErrorKind::Domain, "unknown check id '" + id + "'");
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& e : entries()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

bool is_known_check(const std::string& id) {
  return std::find(check_ids().begin(), check_ids().end(), id) != check_ids().end();
}

bool is_falsification(const std::string& id) { return is_known_check(id) && find(id).falsification; }

bool check_applies(const std::string& id, double p, double s) { return find(id).applies(p, s); }

CheckOutcome run_check(const std::string& id, double p, double s, const CheckConfig& cfg) {
  ExponentPair::make(p, s);  // validates p > 1, s > 0
  return find(id).run(p, s, cfg);
}

std::vector<SuiteTask> expand_tasks(const std::vector<std::string>& ids, const std::vector<double>& p_list,
                                    const std::vector<double>& s_list) {
  const std::vector<double> s_eff = s_list.empty() ? std::vector<double>{std::nan("")} : s_list;
  std::vector<SuiteTask> tasks;
  for (const std::string& id : ids) {
    if (id != "all" && !is_known_check(id)) fail(ErrorKind::Domain, "unknown check id '" + id + "'");
    for (double p : p_list) {
      for (double s_raw : s_eff) {
        // NaN stands for the critical order of this p.
        const double s = std::isnan(s_raw) ? critical_order(p) : s_raw;
        if (id == "all") {
          for (const auto& e : entries())
            if (!e.falsification && e.applies(p, s)) tasks.push_back({e.id, p, s});
        } else {
          tasks.push_back({id, p, s});
        }
      }
    }
  }
  return tasks;
}

std::vector<CheckOutcome> run_tasks(const std::vector<SuiteTask>& tasks, const CheckConfig& cfg, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<CheckOutcome> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = run_check(tasks[i].id, tasks[i].p, tasks[i].s, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace rsharp
