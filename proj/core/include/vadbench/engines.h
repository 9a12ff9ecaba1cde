#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vadbench/audio.h"
#include "vadbench/framing.h"

namespace vadbench {

inline constexpr char kRmsEngineId[] = "RMS";

// dBFS reference: 2^15, so a full-scale square wave at -32768 is 0 dBFS.
inline constexpr double kFullScale = 32768.0;
// Silence floor and bottom of the score mapping.
inline constexpr double kFloorDbfs = -100.0;

// One score in [0, 1] per window of a grid.
struct PredictionTrace {
  std::string engine_id;
  std::uint32_t window_size_ms = 0;
  std::vector<double> scores;
  std::string source_id;
};

struct RmsScore {
  double rms_dbfs = kFloorDbfs;
  double p_intermediate = 0.0;  // (dBFS + 100) / 100, unclamped
  double p = 0.0;               // p_intermediate clamped to [0, 1]
};

// 20 log10(rms / 32768), floored at -100 dBFS (also the result for digital
// silence). Throws kEmptyWindow.
double rms_dbfs(std::span<const std::int16_t> samples);

// Linear map -100..0 dBFS -> 0..1 with clipping at both ends.
RmsScore score_from_dbfs(double dbfs);

RmsScore rms_score(std::span<const std::int16_t> samples);

double rms_vad_score(std::span<const std::int16_t> samples);

// Arithmetic mean. Throws kEmptyInput.
double aggregate_subwindows(std::span<const double> subscores);

// Scores every grid window by averaging rms_vad_score over its native
// subwindows. native_ms == window_size_ms scores each window directly.
PredictionTrace score_clip_rms(const AudioClip& clip, const WindowGrid& grid,
                               std::uint32_t native_ms);

// --- external engine traces -------------------------------------------------

// Per-native-frame scores of an external VAD (e.g. WebRTC at 10 ms, Silero
// at 16 ms) as stored in a `frame_index,start_seconds,score` CSV.
struct NativeTrace {
  std::size_t frame_samples = 0;
  std::uint32_t sample_rate = kCanonicalSampleRate;
  std::vector<double> scores;
};

// Parses the CSV. The frame length is inferred from the second row's start
// time unless `frame_samples` is given; single-row files need it explicitly.
NativeTrace read_native_trace(const std::filesystem::path& path,
                              std::uint32_t sample_rate = kCanonicalSampleRate,
                              std::optional<std::size_t> frame_samples = std::nullopt);

void write_native_trace(const std::filesystem::path& path, const NativeTrace& trace);

// Groups native frames onto the grid: each window takes the frames whose
// start lies inside it, truncated to floor(window / frame) frames, and
// averages them.
PredictionTrace align_native_trace(const NativeTrace& native, const WindowGrid& grid,
                                   std::string engine_id, std::string source_id);

PredictionTrace import_trace(const std::filesystem::path& path, const WindowGrid& grid,
                             std::string engine_id, std::string source_id,
                             std::optional<std::size_t> frame_samples = std::nullopt);

}  // namespace vadbench
