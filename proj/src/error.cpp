#include "rsharp/error.hpp"

namespace rsharp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::ParameterMismatch: return "parameter-mismatch";
    case ErrorKind::UnsupportedRange: return "unsupported-range";
    case ErrorKind::CellBudget: return "cell-budget";
    case ErrorKind::Size: return "size";
    case ErrorKind::ZeroNorm: return "zero-norm";
    case ErrorKind::SingularNode: return "singular-node";
    case ErrorKind::Bracketing: return "bracketing";
    case ErrorKind::WitnessNotFound: return "witness-not-found";
    case ErrorKind::DegenerateExponent: return "degenerate-exponent";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace rsharp
