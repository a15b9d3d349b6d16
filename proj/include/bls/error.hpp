#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bls {

enum class Errc {
  DivisionByZero,
  FieldMismatch,
  InvalidModulus,
  InfiniteField,
  DimensionMismatch,
  ZeroRhs,
  SingularTransform,
  NotReduced,
  SingularCompletion,
  NotRankOne,
  BudgetExceeded,
  NotThreeCorner,
  SingularAfterSpecialization,
  DependentMatrices,
  ParseError,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::InfiniteField: return "InfiniteField";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroRhs: return "ZeroRhs";
    case Errc::SingularTransform: return "SingularTransform";
    case Errc::NotReduced: return "NotReduced";
    case Errc::SingularCompletion: return "SingularCompletion";
    case Errc::NotRankOne: return "NotRankOne";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotThreeCorner: return "NotThreeCorner";
    case Errc::SingularAfterSpecialization: return "SingularAfterSpecialization";
    case Errc::DependentMatrices: return "DependentMatrices";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), message_(what) {}

  Errc code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace bls
