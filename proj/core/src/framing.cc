#include "vadbench/framing.h"

#include <string>

#include "vadbench/error.h"

namespace vadbench {

std::size_t samples_for_ms(std::uint32_t ms, std::uint32_t sample_rate) {
  const std::uint64_t scaled = static_cast<std::uint64_t>(ms) * sample_rate;
  if (ms == 0 || scaled % 1000 != 0) {
    throw Error(ErrorCode::kNonIntegralWindow,
                std::to_string(ms) + " ms at " + std::to_string(sample_rate) +
                    " Hz is not a whole number of samples");
  }
  return static_cast<std::size_t>(scaled / 1000);
}

WindowGrid make_grid(std::size_t clip_len_samples, std::uint32_t window_size_ms,
                     std::uint32_t sample_rate) {
  if (window_size_ms < kMinWindowMs) {
    throw Error(ErrorCode::kWindowTooSmall,
                std::to_string(window_size_ms) + " ms is below the 10 ms minimum");
  }
  if (window_size_ms > kMaxWindowMs) {
    throw Error(ErrorCode::kWindowTooLarge,
                std::to_string(window_size_ms) + " ms exceeds the 10 s maximum");
  }
  const std::size_t per_window = samples_for_ms(window_size_ms, sample_rate);
  const std::size_t count = clip_len_samples / per_window;
  if (count == 0) {
    throw Error(ErrorCode::kClipShorterThanWindow,
                "clip of " + std::to_string(clip_len_samples) +
                    " samples holds no full " + std::to_string(window_size_ms) +
                    " ms window");
  }

  WindowGrid grid;
  grid.window_size_ms_ = window_size_ms;
  grid.sample_rate_ = sample_rate;
  grid.clip_len_ = clip_len_samples;
  grid.samples_per_window_ = per_window;
  grid.spans_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.spans_.push_back({i * per_window, (i + 1) * per_window, i});
  }
  return grid;
}

std::vector<WindowSpan> subdivide(const WindowSpan& span, std::uint32_t native_ms,
                                  std::uint32_t sample_rate) {
  const std::size_t native_len = samples_for_ms(native_ms, sample_rate);
  if (native_len > span.length()) {
    throw Error(ErrorCode::kNativeLargerThanWindow,
                "native " + std::to_string(native_ms) + " ms exceeds window of " +
                    std::to_string(span.length()) + " samples");
  }
  if (native_len == span.length()) return {span};

  const std::size_t count = span.length() / native_len;
  std::vector<WindowSpan> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = span.start_sample + k * native_len;
    out.push_back({start, start + native_len, k});
  }
  return out;
}

const std::vector<std::uint32_t>& canonical_window_sizes_ms() {
  static const std::vector<std::uint32_t> sizes = {10,  20,   50,   100,  200,
                                                   500, 1000, 2000, 5000, 10000};
  return sizes;
}

}  // namespace vadbench
