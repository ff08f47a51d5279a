// rieszsharp: constant tables, verification runs, experiments and
// falsification searches. Exit codes: 0 pass, 1 violation, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rsharp/constants.hpp"
#include "rsharp/error.hpp"
#include "rsharp/registry.hpp"
#include "rsharp/report.hpp"
#include "rsharp/spectral.hpp"

namespace {

using namespace rsharp;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<std::string> p_raw{"4"};
  std::vector<std::string> s_raw;
  std::optional<int> grid_ny, grid_nt;
  std::optional<double> y_max, tol;
  std::size_t N = 4096;
  std::uint64_t seed = 7;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  std::vector<std::string> check_ids{"all"};
  std::string kind;
  int signals = 200;
  int bandwidth = 32;
  std::vector<double> gammas{0.27, 0.30, 0.32};
  std::vector<int> powers{1, 2, 3};
};

double parse_number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size()) fail(ErrorKind::Domain, "not a number: '" + tok + "'");
  return v;
}

// Accepts plain numbers and simple fractions such as 4/3.
double parse_value(const std::string& tok) {
  const auto slash = tok.find('/');
  if (slash == std::string::npos) return parse_number(tok);
  const double den = parse_number(tok.substr(slash + 1));
  if (den == 0.0) fail(ErrorKind::Domain, "zero denominator in '" + tok + "'");
  return parse_number(tok.substr(0, slash)) / den;
}

std::vector<double> parse_p(const std::vector<std::string>& raw) {
  std::vector<double> v;
  for (const auto& t : raw) {
    const double p = parse_value(t);
    if (!(p > 1.0)) fail(ErrorKind::Domain, "p must exceed 1, got " + t);
    v.push_back(p);
  }
  if (v.empty()) fail(ErrorKind::Domain, "--p needs at least one value");
  return v;
}

// "crit" selects the critical order of each p; encoded as NaN.
std::vector<double> parse_s(const std::vector<std::string>& raw) {
  std::vector<double> v;
  for (const auto& t : raw) {
    if (t == "crit") {
      v.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double s = parse_value(t);
    if (!(s > 0.0)) fail(ErrorKind::Domain, "s must be positive, got " + t);
    v.push_back(s);
  }
  return v;
}

std::vector<std::pair<double, double>> pairs(const Options& o) {
  const auto ps = parse_p(o.p_raw);
  auto ss = parse_s(o.s_raw);
  if (ss.empty()) ss.push_back(std::numeric_limits<double>::quiet_NaN());
  std::vector<std::pair<double, double>> out;
  for (double p : ps)
    for (double s : ss) out.emplace_back(p, std::isnan(s) ? critical_order(p) : s);
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot open output file " + o.out);
  f << text;
}

// Small table writer shared by the CSV/JSON outputs of every command.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  static std::string cell(const ordered_json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "nan";
    return v.dump();
  }

  std::string render(const std::string& format) const {
    if (format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json obj;
        for (std::size_t k = 0; k < columns.size(); ++k) obj[columns[k]] = r[k];
        arr.push_back(obj);
      }
      return arr.dump(2) + "\n";
    }
    std::string s;
    for (std::size_t k = 0; k < columns.size(); ++k) s += (k ? "," : "") + columns[k];
    s += "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + cell(r[k]);
      s += "\n";
    }
    return s;
  }
};

ordered_json num(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

int cmd_constants(const Options& o) {
  Table t{{"p", "s", "s_star", "regime", "y_tilde", "C", "D", "A", "lower_bound"}, {}};
  for (auto [p, s] : pairs(o)) {
    const SharpConstantBundle b = compute_constants(p, s);
    double lower = std::numeric_limits<double>::quiet_NaN();
    try {
      lower = sharp_lower_bound(p, s).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Convergence) throw;  // supremum not attained
    }
    t.rows.push_back({num(p), num(s), num(critical_order(p)), std::string(to_string(b.pair.regime)),
                      num(b.attained ? b.y_tilde : std::numeric_limits<double>::infinity()), num(b.k_max),
                      num(b.D_ps), num(b.A_ps), num(lower)});
  }
  emit(o, t.render(o.format));
  return kExitPass;
}

CheckConfig config_of(const Options& o) {
  CheckConfig c;
  c.grid_ny = o.grid_ny;
  c.grid_nt = o.grid_nt;
  c.y_max = o.y_max;
  c.tol = o.tol;
  c.seed = o.seed;
  return c;
}

std::string render_outcomes(const std::vector<CheckOutcome>& res, const std::string& format) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : res) {
      ordered_json entry;
      entry["check_id"] = r.row.check_id;
      entry["p"] = r.row.p;
      entry["s"] = r.row.s;
      entry["succeeded"] = r.succeeded;
      entry["report"] = ordered_json::parse(r.detail_json);
      arr.push_back(entry);
    }
    return arr.dump(2) + "\n";
  }
  std::vector<CheckRow> rows;
  for (const auto& r : res) rows.push_back(r.row);
  return to_csv(rows);
}

int run_and_emit(const Options& o, const std::vector<SuiteTask>& tasks) {
  const auto res = run_tasks(tasks, config_of(o), o.threads);
  emit(o, render_outcomes(res, o.format));
  bool ok = true;
  for (const auto& r : res) {
    ok = ok && r.succeeded;
    if (!r.succeeded) std::cerr << "FAIL " << r.row.check_id << " p=" << r.row.p << " s=" << r.row.s << "\n";
  }
  return ok ? kExitPass : kExitViolation;
}

int cmd_verify(const Options& o) {
  std::vector<double> ps = parse_p(o.p_raw);
  return run_and_emit(o, expand_tasks(o.check_ids, ps, parse_s(o.s_raw)));
}

int cmd_falsify(const Options& o) {
  std::vector<SuiteTask> tasks;
  for (auto [p, s] : pairs(o)) tasks.push_back({p >= 2.0 ? "falsify-supercritical" : "falsify-p-gt-4-3", p, s});
  return run_and_emit(o, tasks);
}

int experiment_ratio(const Options& o) {
  if (o.signals < 1) fail(ErrorKind::Domain, "--signals must be positive");
  Table t{{"signal", "p", "s", "ratio", "A"}, {}};
  bool ok = true;
  for (auto [p, s] : pairs(o)) {
    const double A = A_constant(p, s);
    for (int k = 0; k < o.signals; ++k) {
      const CircleSignal f = random_band_limited(o.N, o.bandwidth, o.seed + static_cast<std::uint64_t>(k));
      const double r = projection_ratio(f, p, s);
      ok = ok && r <= A * (1.0 + 1e-6);
      t.rows.push_back({k, num(p), num(s), num(r), num(A)});
    }
  }
  emit(o, t.render(o.format));
  return ok ? kExitPass : kExitViolation;
}

int experiment_sharpness(const Options& o) {
  Table t{{"p", "s", "gamma", "ratio", "grid_ratio", "target"}, {}};
  for (auto [p, s] : pairs(o)) {
    const LowerBound lb = sharp_lower_bound(p, s);
    for (const SweepRow& r : sharpness_sweep(p, s, o.gammas, lb.y_star, o.N))
      t.rows.push_back({num(p), num(s), num(r.gamma), num(r.ratio), num(r.grid_ratio), num(r.target)});
  }
  emit(o, t.render(o.format));
  return kExitPass;
}

int experiment_isoperimetric(const Options& o) {
  Table t{{"signal", "p", "value", "bound"}, {}};
  bool ok = true;
  for (double p : parse_p(o.p_raw)) {
    auto add = [&](const std::string& name, const CircleSignal& f) {
      const IsoperimetricResult r = isoperimetric_ratio(f, p);
      ok = ok && r.within();
      t.rows.push_back({name, num(p), num(r.value), num(r.bound)});
    };
    std::vector<cplx> spec(o.N, cplx(0.0, 0.0));
    spec[o.N / 2] = 1.0;
    add("one", CircleSignal::from_spectrum(spec));
    for (int n : o.powers) {
      if (n < 0 || static_cast<std::size_t>(n) >= o.N / 2) fail(ErrorKind::Domain, "power out of range");
      std::vector<cplx> z(o.N, cplx(0.0, 0.0));
      z[o.N / 2 + static_cast<std::size_t>(n)] = 1.0;
      add("zeta^" + std::to_string(n), CircleSignal::from_spectrum(std::move(z)));
    }
    add("random-seed-" + std::to_string(o.seed), random_band_limited(o.N, o.bandwidth, o.seed));
  }
  emit(o, t.render(o.format));
  return ok ? kExitPass : kExitViolation;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--p", o.p_raw, "Exponent list, comma separated (fractions like 4/3 allowed)")->delimiter(',');
  app->add_option("--s", o.s_raw, "Order list, comma separated; 'crit' selects the critical order")->delimiter(',');
  app->add_option("--grid-ny", o.grid_ny, "Grid rows in y")->check(CLI::PositiveNumber);
  app->add_option("--grid-nt", o.grid_nt, "Grid columns in t")->check(CLI::PositiveNumber);
  app->add_option("--ymax", o.y_max, "Upper end of the y range")->check(CLI::PositiveNumber);
  app->add_option("--N", o.N, "Samples per signal (power of two)");
  app->add_option("--seed", o.seed, "Random seed");
  app->add_option("--tol", o.tol, "Margin tolerance override")->check(CLI::NonNegativeNumber);
  app->add_option("--out", o.out, "Write the report to this file instead of stdout");
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp constants for Riesz projections: tables, checks and experiments"};
  app.require_subcommand(1);
  Options o;

  auto* constants = app.add_subcommand("constants", "Tabulate s*, y~, C, D, A and the sharp lower bound");
  add_common(constants, o);

  auto* verify = app.add_subcommand("verify", "Run named checks (or 'all') over the (p, s) lists");
  add_common(verify, o);
  verify->add_option("checks", o.check_ids, "Check ids; 'all' excludes falsifications");

  auto* experiment = app.add_subcommand("experiment", "Plot-ready data: ratio | sharpness | isoperimetric");
  add_common(experiment, o);
  experiment->add_option("kind", o.kind, "Experiment kind")
      ->required()
      ->check(CLI::IsMember({"ratio", "sharpness", "isoperimetric"}));
  experiment->add_option("--signals", o.signals, "Random signals per (p, s) for 'ratio'");
  experiment->add_option("--bandwidth", o.bandwidth, "Largest |n| of random signals");
  experiment->add_option("--gamma", o.gammas, "Gamma list for 'sharpness'")->delimiter(',');
  experiment->add_option("--powers", o.powers, "Exponents n of zeta^n for 'isoperimetric'")->delimiter(',');

  auto* falsify = app.add_subcommand("falsify", "Search for violations beyond the proven range");
  add_common(falsify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*constants) return cmd_constants(o);
    if (*verify) return cmd_verify(o);
    if (*falsify) return cmd_falsify(o);
    if (o.kind == "ratio") return experiment_ratio(o);
    if (o.kind == "sharpness") return experiment_sharpness(o);
    return experiment_isoperimetric(o);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
