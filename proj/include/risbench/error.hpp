#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace risbench {

enum class ErrorCode {
  // surface model
  InvalidStateCount,
  InvalidGamma,
  NonPositiveParam,
  GroupSizeMismatch,
  LengthMismatch,
  InvalidStateIndex,
  // field engine
  ConfigMismatch,
  SourceBelowSurface,
  GridMissingPlane,
  InvalidGrid,
  AllZeroField,
  // benchmarks
  UnknownBenchmark,
  OverlappingLobes,
  InvalidBeam,
  // metrics
  EmptyRegion,
  ZeroReferenceDirectivity,
  GridMismatch,
  // optimizer
  SearchSpaceTooLarge,
  InvalidGAParams,
  // harness
  ConfigParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Broad failure class, used by the CLI to pick an exit status.
enum class ErrorCategory { Config, Numeric, Io };

ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace risbench
