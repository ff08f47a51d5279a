#pragma once

#include <string>
#include <vector>

#include "rsharp/lemmas.hpp"
#include "rsharp/minorant.hpp"

namespace rsharp {

// Uniform row shared by grid verifications and lemma checks.
struct CheckRow {
  std::string check_id;
  double p = 0.0;
  double s = 0.0;
  double min_margin = 0.0;
  double argmin_y = 0.0;
  double argmin_t = 0.0;
  std::size_t violations = 0;
  double tol = 0.0;
  bool passed = false;
  bool falsification = false;
  std::string note;
};

CheckRow to_row(const VerificationReport& r);
// argmin entries named "y" and "t" fill the coordinates; p and s come from
// the caller because lemma results carry them only in param_grid.
CheckRow to_row(const LemmaCheckResult& r, double p, double s);

std::string csv_header();
std::string to_csv_line(const CheckRow& row);
std::string to_csv(const std::vector<CheckRow>& rows);

// Pretty-printed JSON, keys in a fixed order so output is byte-stable.
std::string to_json(const std::vector<CheckRow>& rows);
std::string to_json(const VerificationReport& r);
std::string to_json(const LemmaCheckResult& r);

// Shortest round-trip decimal form used throughout the text outputs.
std::string format_double(double x);

}  // namespace rsharp
