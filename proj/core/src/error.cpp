#include "vsign/error.hpp"

namespace vsign {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::ConstantImage: return "ConstantImage";
    case ErrorCode::DegenerateClusters: return "DegenerateClusters";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::NoValley: return "NoValley";
    case ErrorCode::DegenerateTips: return "DegenerateTips";
    case ErrorCode::FingerSeparationError: return "FingerSeparationError";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::DegenerateShape: return "DegenerateShape";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
    case ErrorCode::MalformedName: return "MalformedName";
    case ErrorCode::InsufficientExamples: return "InsufficientExamples";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace vsign
