#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgmask {

enum class ErrorCode {
  kBadMagic,
  kTruncatedPayload,
  kInvalidDims,
  kUnsupportedColorSpace,
  kMalformedHeader,
  kMalformedFrameHeader,
  kTruncatedFrame,
  kIndexOutOfRange,
  kDimsNotBlockAligned,
  kEmptySearchWindow,
  kDimMismatch,
  kNotDivisible,
  kSpecMismatch,
  kCountMismatch,
  kTargetExceedsGrid,
  kMotionDimsMismatch,
  kNoInsideBlocks,
  kNoOutsideBlocks,
  kInvalidArgument,
  kMalformedJson,
  kMissingMotion,
  kMissingAnnotation,
  kIoError,
};

// Stable identifier used in error reports and stats JSON, e.g. "TruncatedPayload".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mgmask
