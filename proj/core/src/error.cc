#include "vadbench/error.h"

namespace vadbench {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kNotRiffWav: return "NotRiffWav";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kAudioTooLong: return "AudioTooLong";
    case ErrorCode::kWindowTooSmall: return "WindowTooSmall";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kNonIntegralWindow: return "NonIntegralWindow";
    case ErrorCode::kClipShorterThanWindow: return "ClipShorterThanWindow";
    case ErrorCode::kNativeLargerThanWindow: return "NativeLargerThanWindow";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedTraceFile: return "MalformedTraceFile";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kFrameCountMismatch: return "FrameCountMismatch";
    case ErrorCode::kMalformedLabelFile: return "MalformedLabelFile";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kEndBeforeStart: return "EndBeforeStart";
    case ErrorCode::kEmptyTrack: return "EmptyTrack";
    case ErrorCode::kInvalidThresholds: return "InvalidThresholds";
    case ErrorCode::kInvalidStep: return "InvalidStep";
    case ErrorCode::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyCounts: return "EmptyCounts";
    case ErrorCode::kSingleClassInput: return "SingleClassInput";
    case ErrorCode::kNoPositives: return "NoPositives";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kDataError: return "DataError";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kWindowTooSmall:
    case ErrorCode::kWindowTooLarge:
    case ErrorCode::kNonIntegralWindow:
    case ErrorCode::kNativeLargerThanWindow:
    case ErrorCode::kInvalidThresholds:
    case ErrorCode::kInvalidStep:
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kConfigError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace vadbench
