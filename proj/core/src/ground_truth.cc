#include "vadbench/ground_truth.h"

#include <algorithm>
#include <cmath>

#include "csv.h"
#include "vadbench/error.h"

namespace vadbench {

std::vector<Segment> normalize_segments(std::vector<Segment> segments) {
  for (const Segment& s : segments) {
    if (!std::isfinite(s.start) || !std::isfinite(s.end)) {
      throw Error(ErrorCode::kMalformedLabelFile, "non-finite segment time");
    }
    if (s.start < 0.0 || s.end < 0.0) {
      throw Error(ErrorCode::kNegativeTime,
                  "segment (" + csv::format_double(s.start) + ", " +
                      csv::format_double(s.end) + ") has a negative time");
    }
    if (s.end < s.start) {
      throw Error(ErrorCode::kEndBeforeStart,
                  "segment (" + csv::format_double(s.start) + ", " +
                      csv::format_double(s.end) + ") ends before it starts");
    }
  }
  std::erase_if(segments, [](const Segment& s) { return s.end == s.start; });
  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });

  std::vector<Segment> merged;
  for (const Segment& s : segments) {
    if (!merged.empty() && s.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

SegmentLabels parse_labels(const std::filesystem::path& path) {
  const auto lines = csv::read_lines(path);
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto fields = csv::split(lines[i], '\t');
    const auto start = fields.size() >= 2 ? csv::parse_double(fields[0]) : std::nullopt;
    const auto end = fields.size() >= 2 ? csv::parse_double(fields[1]) : std::nullopt;
    if (!start || !end) {
      throw Error(ErrorCode::kMalformedLabelFile,
                  path.string() + ":" + std::to_string(i + 1) +
                      ": expected start<TAB>end[<TAB>text]");
    }
    segments.push_back({*start, *end});
  }
  // Strip the stem's ".labels" suffix so the id matches the wav stem.
  std::string id = path.stem().string();
  if (id.ends_with(".labels")) id.resize(id.size() - 7);
  return SegmentLabels{normalize_segments(std::move(segments)), std::move(id)};
}

std::string labels_tsv(const SegmentLabels& labels) {
  std::string body;
  for (const Segment& s : labels.segments) {
    body += csv::format_double(s.start) + '\t' + csv::format_double(s.end) + "\tspeech\n";
  }
  return body;
}

void write_labels(const std::filesystem::path& path, const SegmentLabels& labels) {
  csv::write_text(path, labels_tsv(labels));
}

ClippedLabels clip_to_duration(const SegmentLabels& labels, double duration_seconds) {
  ClippedLabels out;
  out.labels.source_id = labels.source_id;
  for (const Segment& s : labels.segments) {
    if (s.end > duration_seconds) out.clipped = true;
    if (s.start >= duration_seconds) continue;
    out.labels.segments.push_back({s.start, std::min(s.end, duration_seconds)});
  }
  return out;
}

WindowLabelTrack window_labels(const SegmentLabels& segments, const WindowGrid& grid) {
  WindowLabelTrack track;
  track.window_size_ms = grid.window_size_ms();
  track.source_id = segments.source_id;
  track.labels.assign(grid.size(), false);

  const double rate = grid.sample_rate();
  const auto segs = normalize_segments(segments.segments);
  std::size_t first = 0;  // earliest segment that can still reach this window
  for (const WindowSpan& span : grid.spans()) {
    const double w_start = static_cast<double>(span.start_sample) / rate;
    const double w_end = static_cast<double>(span.end_sample) / rate;
    while (first < segs.size() && segs[first].end <= w_start) ++first;
    for (std::size_t k = first; k < segs.size() && segs[k].start < w_end; ++k) {
      if (segs[k].end > w_start) {
        track.labels[span.index] = true;
        break;
      }
    }
  }
  return track;
}

double prevalence(const WindowLabelTrack& track) {
  if (track.labels.empty()) {
    throw Error(ErrorCode::kEmptyTrack, "prevalence of an empty label track");
  }
  const auto positives = std::count(track.labels.begin(), track.labels.end(), true);
  return static_cast<double>(positives) / static_cast<double>(track.labels.size());
}

}  // namespace vadbench
