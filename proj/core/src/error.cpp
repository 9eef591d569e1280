#include "mgmask/error.hpp"

namespace mgmask {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kInvalidDims: return "InvalidDims";
    case ErrorCode::kUnsupportedColorSpace: return "UnsupportedColorSpace";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kMalformedFrameHeader: return "MalformedFrameHeader";
    case ErrorCode::kTruncatedFrame: return "TruncatedFrame";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDimsNotBlockAligned: return "DimsNotBlockAligned";
    case ErrorCode::kEmptySearchWindow: return "EmptySearchWindow";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kNotDivisible: return "NotDivisible";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kTargetExceedsGrid: return "TargetExceedsGrid";
    case ErrorCode::kMotionDimsMismatch: return "MotionDimsMismatch";
    case ErrorCode::kNoInsideBlocks: return "NoInsideBlocks";
    case ErrorCode::kNoOutsideBlocks: return "NoOutsideBlocks";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kMissingMotion: return "MissingMotion";
    case ErrorCode::kMissingAnnotation: return "MissingAnnotation";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code) {}

}  // namespace mgmask
