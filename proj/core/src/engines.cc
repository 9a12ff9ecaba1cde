#include "vadbench/engines.h"

#include <algorithm>
#include <cmath>

#include "vadbench/error.h"

namespace vadbench {

double rms_dbfs(std::span<const std::int16_t> samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyWindow, "cannot take the RMS of an empty window");
  }
  double sum_squares = 0.0;
  for (std::int16_t s : samples) {
    const double v = s;
    sum_squares += v * v;
  }
  if (sum_squares == 0.0) return kFloorDbfs;
  const double rms = std::sqrt(sum_squares / static_cast<double>(samples.size()));
  return std::max(kFloorDbfs, 20.0 * std::log10(rms / kFullScale));
}

RmsScore score_from_dbfs(double dbfs) {
  RmsScore score;
  score.rms_dbfs = dbfs;
  score.p_intermediate = (dbfs + 100.0) / 100.0;
  score.p = std::clamp(score.p_intermediate, 0.0, 1.0);
  return score;
}

RmsScore rms_score(std::span<const std::int16_t> samples) {
  return score_from_dbfs(rms_dbfs(samples));
}

double rms_vad_score(std::span<const std::int16_t> samples) {
  return rms_score(samples).p;
}

double aggregate_subwindows(std::span<const double> subscores) {
  if (subscores.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no subwindow scores to aggregate");
  }
  double sum = 0.0;
  for (double s : subscores) sum += s;
  // Keep the mean inside [min, max] despite rounding.
  const auto [lo, hi] = std::minmax_element(subscores.begin(), subscores.end());
  return std::clamp(sum / static_cast<double>(subscores.size()), *lo, *hi);
}

PredictionTrace score_clip_rms(const AudioClip& clip, const WindowGrid& grid,
                               std::uint32_t native_ms) {
  if (grid.clip_len() != clip.size() || grid.sample_rate() != clip.sample_rate()) {
    throw Error(ErrorCode::kAlignmentMismatch,
                "grid was not built for clip '" + clip.source_id() + "'");
  }
  PredictionTrace trace;
  trace.engine_id = kRmsEngineId;
  trace.window_size_ms = grid.window_size_ms();
  trace.source_id = clip.source_id();
  trace.scores.reserve(grid.size());

  const auto samples = clip.samples();
  std::vector<double> subscores;
  for (const WindowSpan& span : grid.spans()) {
    const auto subs = subdivide(span, native_ms, grid.sample_rate());
    subscores.clear();
    for (const WindowSpan& sub : subs) {
      subscores.push_back(rms_vad_score(samples.subspan(sub.start_sample, sub.length())));
    }
    trace.scores.push_back(aggregate_subwindows(subscores));
  }
  return trace;
}

}  // namespace vadbench
