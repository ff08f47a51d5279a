#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsharp {

enum class ErrorKind {
  Domain,             // argument outside the mathematical domain
  Convergence,        // iterative search could not bracket or converge
  ParameterMismatch,  // (p, s) inconsistent with the requested branch
  UnsupportedRange,   // no proven constant exists for this (p, s)
  CellBudget,         // grid larger than the configured budget
  Size,               // signal length invalid or mismatched
  ZeroNorm,           // normalization by a vanishing norm
  SingularNode,       // a grid node coincides with a pole
  Bracketing,         // implicit equation has no bracketed root
  WitnessNotFound,    // falsification search exhausted its grid
  DegenerateExponent, // 2/(p-2) at p = 2
  Io,                 // malformed input file
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rsharp
