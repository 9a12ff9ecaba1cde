#include <cmath>
#include <string>

#include "csv.h"
#include "vadbench/engines.h"
#include "vadbench/error.h"

namespace vadbench {
namespace {

constexpr std::string_view kTraceHeader = "frame_index,start_seconds,score";

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
  throw Error(ErrorCode::kMalformedTraceFile,
              path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

NativeTrace read_native_trace(const std::filesystem::path& path, std::uint32_t sample_rate,
                              std::optional<std::size_t> frame_samples) {
  const auto lines = csv::read_lines(path);
  if (lines.empty() || csv::trim(lines.front()) != kTraceHeader) {
    malformed(path, 1, "expected header '" + std::string(kTraceHeader) + "'");
  }

  std::vector<double> starts;
  NativeTrace trace;
  trace.sample_rate = sample_rate;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto fields = csv::split(lines[i], ',');
    if (fields.size() != 3) malformed(path, i + 1, "expected 3 fields");
    const auto index = csv::parse_int(fields[0]);
    const auto start = csv::parse_double(fields[1]);
    const auto score = csv::parse_double(fields[2]);
    if (!index || !start || !score) malformed(path, i + 1, "unparseable field");
    if (*index != static_cast<std::int64_t>(trace.scores.size())) {
      malformed(path, i + 1, "frame_index out of sequence");
    }
    if (!(*score >= 0.0 && *score <= 1.0)) {
      throw Error(ErrorCode::kScoreOutOfRange,
                  path.string() + ":" + std::to_string(i + 1) + ": score " +
                      std::string(csv::trim(fields[2])) + " outside [0, 1]");
    }
    starts.push_back(*start);
    trace.scores.push_back(*score);
  }
  if (trace.scores.empty()) malformed(path, 2, "no frames");

  if (frame_samples) {
    trace.frame_samples = *frame_samples;
  } else {
    if (starts.size() < 2) malformed(path, 2, "cannot infer frame size from one frame");
    trace.frame_samples =
        static_cast<std::size_t>(std::llround(starts[1] * static_cast<double>(sample_rate)));
  }
  if (trace.frame_samples == 0) malformed(path, 3, "zero-length frames");

  // Frames are contiguous from 0 s; allow half a sample of decimal rounding.
  const double tolerance = 0.5 / static_cast<double>(sample_rate);
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const double expected = static_cast<double>(k * trace.frame_samples) / sample_rate;
    if (std::abs(starts[k] - expected) > tolerance) {
      malformed(path, k + 2, "frames are not contiguous from 0.0 s");
    }
  }
  return trace;
}

void write_native_trace(const std::filesystem::path& path, const NativeTrace& trace) {
  std::string body(kTraceHeader);
  body += '\n';
  for (std::size_t k = 0; k < trace.scores.size(); ++k) {
    const double start =
        static_cast<double>(k * trace.frame_samples) / static_cast<double>(trace.sample_rate);
    body += std::to_string(k) + ',' + csv::format_double(start) + ',' +
            csv::format_double(trace.scores[k]) + '\n';
  }
  csv::write_text(path, body);
}

PredictionTrace align_native_trace(const NativeTrace& native, const WindowGrid& grid,
                                   std::string engine_id, std::string source_id) {
  const std::size_t frame = native.frame_samples;
  const std::size_t window = grid.samples_per_window();
  if (native.sample_rate != grid.sample_rate()) {
    throw Error(ErrorCode::kAlignmentMismatch, "trace and grid sample rates differ");
  }
  if (frame == 0 || frame > window) {
    throw Error(ErrorCode::kNativeLargerThanWindow,
                "native frame of " + std::to_string(frame) + " samples vs window of " +
                    std::to_string(window));
  }
  const std::size_t per_window = window / frame;

  PredictionTrace trace;
  trace.engine_id = std::move(engine_id);
  trace.window_size_ms = grid.window_size_ms();
  trace.source_id = std::move(source_id);
  trace.scores.reserve(grid.size());

  for (const WindowSpan& span : grid.spans()) {
    // First frame starting at or after the window start.
    const std::size_t first = (span.start_sample + frame - 1) / frame;
    if (first + per_window > native.scores.size()) {
      throw Error(ErrorCode::kFrameCountMismatch,
                  "trace for '" + trace.source_id + "' has " +
                      std::to_string(native.scores.size()) + " frames; window " +
                      std::to_string(span.index) + " needs frames up to " +
                      std::to_string(first + per_window - 1));
    }
    trace.scores.push_back(aggregate_subwindows(
        std::span<const double>(native.scores).subspan(first, per_window)));
  }
  return trace;
}

PredictionTrace import_trace(const std::filesystem::path& path, const WindowGrid& grid,
                             std::string engine_id, std::string source_id,
                             std::optional<std::size_t> frame_samples) {
  const auto native = read_native_trace(path, grid.sample_rate(), frame_samples);
  return align_native_trace(native, grid, std::move(engine_id), std::move(source_id));
}

}  // namespace vadbench
