#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vadbench/framing.h"

namespace vadbench {

// Half-open speech interval [start, end) in seconds.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const Segment&) const = default;
};

// Sorted, pairwise-disjoint speech segments for one clip.
struct SegmentLabels {
  std::vector<Segment> segments;
  std::string source_id;
};

struct WindowLabelTrack {
  std::vector<bool> labels;  // true = speech
  std::uint32_t window_size_ms = 0;
  std::string source_id;
};

// Sorts and merges overlapping or touching segments. Validates each one
// (kNegativeTime, kEndBeforeStart); zero-length segments are dropped.
std::vector<Segment> normalize_segments(std::vector<Segment> segments);

// Reads `start<TAB>end[<TAB>text]` lines. Blank lines are skipped.
SegmentLabels parse_labels(const std::filesystem::path& path);

// `start<TAB>end<TAB>speech` lines.
std::string labels_tsv(const SegmentLabels& labels);

void write_labels(const std::filesystem::path& path, const SegmentLabels& labels);

struct ClippedLabels {
  SegmentLabels labels;
  bool clipped = false;  // something extended past the clip end
};

// Truncates segments at `duration_seconds`, dropping any that start at or
// past it.
ClippedLabels clip_to_duration(const SegmentLabels& labels, double duration_seconds);

// Window i is speech iff [start_i, end_i) has a nonzero-length overlap with
// some segment.
WindowLabelTrack window_labels(const SegmentLabels& segments, const WindowGrid& grid);

// Fraction of speech windows. Throws kEmptyTrack.
double prevalence(const WindowLabelTrack& track);

}  // namespace vadbench
