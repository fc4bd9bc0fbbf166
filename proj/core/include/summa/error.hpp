#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace summa {

enum class ErrorCode {
  InvalidArgument,
  InvalidDescriptor,
  NonPositiveValue,
  Overflow,
  WindowTooSmall,
  AllZeroWindow,
  EmptySeries,
  CutViolation,
  QuadratureFailure,
  ForbiddenDirection,
  RootOnNonnegativeIntegers,
  IllConditioned,
  BranchViolation,
  DepthExceeded,
  TermBudgetExceeded,
  EvaluatorUnavailable,
  OutsideBaseDisc,
  PrecisionLoss,
  NotExact,
  LeadingCoefficientNotConstant,
  TruncationStarved,
  ShapeMismatch,
  UnrecognizedClosedForm,
  ClassificationConflict,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace summa
