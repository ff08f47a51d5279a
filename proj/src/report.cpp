#include "rsharp/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>

namespace rsharp {

using nlohmann::ordered_json;

namespace {

ordered_json num_or_null(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? "inf" : "-inf";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json row_json(const CheckRow& r) {
  ordered_json j;
  j["check_id"] = r.check_id;
  j["p"] = num_or_null(r.p);
  j["s"] = num_or_null(r.s);
  j["min_margin"] = num_or_null(r.min_margin);
  j["argmin_y"] = num_or_null(r.argmin_y);
  j["argmin_t"] = num_or_null(r.argmin_t);
  j["violations"] = r.violations;
  j["tol"] = r.tol;
  j["passed"] = r.passed;
  if (r.falsification) j["falsification"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ordered_json grid_json(const GridSpec& g) {
  ordered_json j;
  j["y_lo"] = g.y_lo;
  j["y_max"] = g.y_max;
  j["n_y"] = g.n_y;
  j["t_lo"] = g.t_lo;
  j["t_hi"] = g.t_hi;
  j["n_t"] = g.n_t;
  j["offset_half_cell"] = g.offset_half_cell;
  return j;
}

ordered_json lemma_json(const LemmaCheckResult& r) {
  ordered_json j;
  j["lemma_id"] = r.lemma_id;
  j["param_grid"] = r.param_grid;
  j["min_margin"] = num_or_null(r.min_margin);
  ordered_json arg = ordered_json::object();
  for (const auto& [name, value] : r.argmin) arg[name] = num_or_null(value);
  j["argmin"] = arg;
  j["passed"] = r.passed;
  j["tol"] = r.tol;
  j["endpoint_margin"] = num_or_null(r.endpoint_margin);
  j["falsification"] = r.falsification;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.parts.empty()) {
    ordered_json parts = ordered_json::array();
    for (const auto& part : r.parts) parts.push_back(lemma_json(part));
    j["parts"] = parts;
  }
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

CheckRow to_row(const VerificationReport& r) {
  CheckRow row;
  row.check_id = r.check_id;
  row.p = r.params.p;
  row.s = r.params.s;
  row.min_margin = r.min_margin;
  row.argmin_y = r.argmin_y;
  row.argmin_t = r.argmin_t;
  row.violations = r.violations;
  row.tol = r.tol;
  row.passed = r.passed();
  return row;
}

CheckRow to_row(const LemmaCheckResult& r, double p, double s) {
  CheckRow row;
  row.check_id = r.lemma_id;
  row.p = p;
  row.s = s;
  row.min_margin = r.min_margin;
  row.argmin_y = std::nan("");
  row.argmin_t = std::nan("");
  for (const auto& [name, value] : r.argmin) {
    if (name == "y") row.argmin_y = value;
    if (name == "t") row.argmin_t = value;
  }
  row.violations = r.passed ? 0 : 1;
  row.tol = r.tol;
  row.passed = r.passed;
  row.falsification = r.falsification;
  row.note = r.note;
  return row;
}

std::string csv_header() { return "check_id,p,s,min_margin,argmin_y,argmin_t,violations,tol"; }

std::string to_csv_line(const CheckRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{}", csv_escape(r.check_id), format_double(r.p), format_double(r.s),
                     format_double(r.min_margin), format_double(r.argmin_y), format_double(r.argmin_t), r.violations,
                     format_double(r.tol));
}

std::string to_csv(const std::vector<CheckRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += to_csv_line(r) + "\n";
  return out;
}

std::string to_json(const std::vector<CheckRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(row_json(r));
  return arr.dump(2) + "\n";
}

std::string to_json(const VerificationReport& r) {
  ordered_json j = row_json(to_row(r));
  j["grid"] = grid_json(r.grid);
  j["regime"] = std::string(to_string(r.params.regime));
  j["reduction_max_rel_error"] = num_or_null(r.reduction_max_rel_error);
  j["reduction_samples"] = r.reduction_samples;
  return j.dump(2) + "\n";
}

std::string to_json(const LemmaCheckResult& r) { return lemma_json(r).dump(2) + "\n"; }

}  // namespace rsharp
