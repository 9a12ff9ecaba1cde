#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vadbench {

enum class ErrorCode {
  // audio ingest
  kIoFailure,
  kNotRiffWav,
  kUnsupportedFormat,
  kEmptyAudio,
  kAudioTooLong,
  // framing
  kWindowTooSmall,
  kWindowTooLarge,
  kNonIntegralWindow,
  kClipShorterThanWindow,
  kNativeLargerThanWindow,
  // scoring
  kEmptyWindow,
  kEmptyInput,
  kMalformedTraceFile,
  kScoreOutOfRange,
  kFrameCountMismatch,
  // ground truth
  kMalformedLabelFile,
  kNegativeTime,
  kEndBeforeStart,
  kEmptyTrack,
  // hysteresis
  kInvalidThresholds,
  kInvalidStep,
  kAlignmentMismatch,
  // metrics
  kLengthMismatch,
  kEmptyCounts,
  kSingleClassInput,
  kNoPositives,
  // fixtures
  kInvalidSpec,
  // harness
  kConfigError,
  kDataError,
};

std::string_view error_code_name(ErrorCode code);

/// True for errors caused by how the tool was invoked (bad flags, bad
/// window sizes, bad steps), as opposed to problems with the input data.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vadbench
