#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surfsing {

enum class Errc {
  SingularMatrix,
  NotSymmetric,
  DimensionMismatch,
  IndexOutOfRange,
  DivisionByZero,
  InvalidGraph,
  InvalidParameters,
  UnknownRow,
  NotNegativeDefinite,
  BoundTooSmall,
  PreconditionViolated,
  InternalError,
  TooManyBranchesAtSmoothPoint,
  NotLCInput,
  NotKLT,
  DegenerateIdeal,
  ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::UnknownRow: return "UnknownRow";
    case Errc::NotNegativeDefinite: return "NotNegativeDefinite";
    case Errc::BoundTooSmall: return "BoundTooSmall";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InternalError: return "InternalError";
    case Errc::TooManyBranchesAtSmoothPoint: return "TooManyBranchesAtSmoothPoint";
    case Errc::NotLCInput: return "NotLCInput";
    case Errc::NotKLT: return "NotKLT";
    case Errc::DegenerateIdeal: return "DegenerateIdeal";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace surfsing
