#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsign {

enum class ErrorCode {
  InvalidArgument,
  ZeroDimension,
  EmptyMask,
  ConstantImage,
  DegenerateClusters,
  MissingClass,
  NoValley,
  DegenerateTips,
  FingerSeparationError,
  EmptyRegion,
  DegenerateShape,
  DimensionMismatch,
  EmptyTrainingSet,
  MethodMismatch,
  MalformedName,
  InsufficientExamples,
  IoError,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vsign
