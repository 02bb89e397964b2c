#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linrem {

enum class ErrorKind {
  NonPrimeModulus,
  DivisionByZero,
  SyntaxError,
  RankDeficient,
  EmptyW,
  NoFreeColumns,
  SearchBudgetExceeded,
  EdgeNotInHost,
  MissingEdge,
  SimplicityViolation,
  IndivisibleAmbient,
  InvalidArgument,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::EmptyW: return "EmptyW";
    case ErrorKind::NoFreeColumns: return "NoFreeColumns";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::EdgeNotInHost: return "EdgeNotInHost";
    case ErrorKind::MissingEdge: return "MissingEdge";
    case ErrorKind::SimplicityViolation: return "SimplicityViolation";
    case ErrorKind::IndivisibleAmbient: return "IndivisibleAmbient";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is stable and is what the CLI
/// prints; `what()` carries "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) +
                           (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace linrem
