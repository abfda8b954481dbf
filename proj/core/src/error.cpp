#include "degenlab/error.hpp"

namespace degenlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RatioUnbounded: return "RatioUnbounded";
    case ErrorCode::NotDegenerate: return "NotDegenerate";
    case ErrorCode::QuadratureDivergent: return "QuadratureDivergent";
    case ErrorCode::InadmissibleLambda: return "InadmissibleLambda";
    case ErrorCode::NonMonotoneF: return "NonMonotoneF";
    case ErrorCode::AUnbounded: return "AUnbounded";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::StepBlowup: return "StepBlowup";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadB: return "BadB";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::InsufficientSnapshots: return "InsufficientSnapshots";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::CenterNotClean: return "CenterNotClean";
    case ErrorCode::RampActive: return "RampActive";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
  }
  return "Unknown";
}

}  // namespace degenlab
