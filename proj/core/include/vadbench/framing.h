#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vadbench {

inline constexpr std::uint32_t kMinWindowMs = 10;
inline constexpr std::uint32_t kMaxWindowMs = 10000;

// Half-open sample range [start_sample, end_sample).
struct WindowSpan {
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;
  std::size_t index = 0;

  std::size_t length() const { return end_sample - start_sample; }
  bool operator==(const WindowSpan&) const = default;
};

// Non-overlapping full windows tiling the head of a clip. A trailing
// partial window is dropped, so covered_len() may be short of clip_len().
class WindowGrid {
 public:
  std::uint32_t window_size_ms() const { return window_size_ms_; }
  std::uint32_t sample_rate() const { return sample_rate_; }
  std::size_t clip_len() const { return clip_len_; }
  std::size_t samples_per_window() const { return samples_per_window_; }
  std::size_t covered_len() const { return spans_.size() * samples_per_window_; }
  std::size_t size() const { return spans_.size(); }
  const std::vector<WindowSpan>& spans() const { return spans_; }
  const WindowSpan& operator[](std::size_t i) const { return spans_[i]; }

 private:
  friend WindowGrid make_grid(std::size_t, std::uint32_t, std::uint32_t);

  std::uint32_t window_size_ms_ = 0;
  std::uint32_t sample_rate_ = 0;
  std::size_t clip_len_ = 0;
  std::size_t samples_per_window_ = 0;
  std::vector<WindowSpan> spans_;
};

// Samples in `ms` milliseconds at `sample_rate`; throws kNonIntegralWindow
// when that is not a whole number.
std::size_t samples_for_ms(std::uint32_t ms, std::uint32_t sample_rate);

WindowGrid make_grid(std::size_t clip_len_samples, std::uint32_t window_size_ms,
                     std::uint32_t sample_rate);

// Splits `span` into floor(len / native_len) contiguous native-size
// subwindows from its start; any remainder is dropped.
std::vector<WindowSpan> subdivide(const WindowSpan& span, std::uint32_t native_ms,
                                  std::uint32_t sample_rate);

// Canonical sweep used by the CLI, 10 ms .. 10 s.
const std::vector<std::uint32_t>& canonical_window_sizes_ms();

}  // namespace vadbench
