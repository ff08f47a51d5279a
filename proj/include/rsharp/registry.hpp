#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsharp/report.hpp"

namespace rsharp {

// Overrides shared by every check; unset fields keep each check's default.
struct CheckConfig {
  std::optional<int> grid_ny;
  std::optional<int> grid_nt;
  std::optional<double> y_max;
  std::optional<double> tol;
  std::uint64_t seed = 2024;
};

struct CheckOutcome {
  CheckRow row;
  std::string detail_json;  // full per-check report
  bool succeeded = false;   // passed, or for falsifications: witness found
};

// All known ids in a fixed order.
const std::vector<std::string>& check_ids();
bool is_known_check(const std::string& id);
bool is_falsification(const std::string& id);

// Whether the check's stated domain contains (p, s). Used to expand "all".
bool check_applies(const std::string& id, double p, double s);

// Runs one check. Throws Error for unknown ids or parameters outside the domain.
CheckOutcome run_check(const std::string& id, double p, double s, const CheckConfig& cfg);

struct SuiteTask {
  std::string id;
  double p = 0.0;
  double s = 0.0;
};

// "all" expands to every non-falsification check whose domain contains (p, s).
// Explicit ids are kept even when out of domain so that run_check reports it.
std::vector<SuiteTask> expand_tasks(const std::vector<std::string>& ids, const std::vector<double>& p_list,
                                    const std::vector<double>& s_list);

// Executes tasks on up to `threads` workers; results keep task order.
std::vector<CheckOutcome> run_tasks(const std::vector<SuiteTask>& tasks, const CheckConfig& cfg,
                                    unsigned threads = 0);

}  // namespace rsharp
