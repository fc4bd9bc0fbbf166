#include "summa/error.hpp"

namespace summa {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::AllZeroWindow: return "AllZeroWindow";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::CutViolation: return "CutViolation";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ForbiddenDirection: return "ForbiddenDirection";
    case ErrorCode::RootOnNonnegativeIntegers: return "RootOnNonnegativeIntegers";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::TermBudgetExceeded: return "TermBudgetExceeded";
    case ErrorCode::EvaluatorUnavailable: return "EvaluatorUnavailable";
    case ErrorCode::OutsideBaseDisc: return "OutsideBaseDisc";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::LeadingCoefficientNotConstant: return "LeadingCoefficientNotConstant";
    case ErrorCode::TruncationStarved: return "TruncationStarved";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnrecognizedClosedForm: return "UnrecognizedClosedForm";
    case ErrorCode::ClassificationConflict: return "ClassificationConflict";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace summa
