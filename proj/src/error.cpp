#include "risbench/error.hpp"

namespace risbench {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidStateCount: return "InvalidStateCount";
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::NonPositiveParam: return "NonPositiveParam";
    case ErrorCode::GroupSizeMismatch: return "GroupSizeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidStateIndex: return "InvalidStateIndex";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::SourceBelowSurface: return "SourceBelowSurface";
    case ErrorCode::GridMissingPlane: return "GridMissingPlane";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::AllZeroField: return "AllZeroField";
    case ErrorCode::UnknownBenchmark: return "UnknownBenchmark";
    case ErrorCode::OverlappingLobes: return "OverlappingLobes";
    case ErrorCode::InvalidBeam: return "InvalidBeam";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::ZeroReferenceDirectivity: return "ZeroReferenceDirectivity";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidGAParams: return "InvalidGAParams";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigParseError:
    case ErrorCode::UnknownBenchmark:
    case ErrorCode::OverlappingLobes:
    case ErrorCode::InvalidBeam:
    case ErrorCode::InvalidStateCount:
    case ErrorCode::InvalidGamma:
    case ErrorCode::GroupSizeMismatch:
    case ErrorCode::InvalidGAParams:
    case ErrorCode::InvalidGrid:
      return ErrorCategory::Config;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Numeric;
  }
}

}  // namespace risbench
