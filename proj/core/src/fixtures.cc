#include "vadbench/fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "vadbench/engines.h"
#include "vadbench/error.h"

namespace vadbench {
namespace {

constexpr double kToneHz = 220.0;

double amplitude_for_dbfs(double dbfs) { return kFullScale * std::pow(10.0, dbfs / 20.0); }

// Unit-RMS waveform of `count` samples.
std::vector<double> unit_region(std::size_t count, Waveform waveform, SplitMix64& rng) {
  std::vector<double> out(count);
  if (waveform == Waveform::kTone) {
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const double omega = 2.0 * std::numbers::pi * kToneHz / kCanonicalSampleRate;
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = std::sin(omega * static_cast<double>(i) + phase);
    }
  } else {
    for (double& v : out) v = 2.0 * rng.uniform() - 1.0;
  }
  double sum_squares = 0.0;
  for (double v : out) sum_squares += v * v;
  const double rms = std::sqrt(sum_squares / static_cast<double>(count));
  if (rms > 0.0) {
    for (double& v : out) v /= rms;
  }
  return out;
}

void fill_region(std::vector<std::int16_t>& samples, std::size_t begin, std::size_t end,
                 double level_dbfs, Waveform waveform, SplitMix64& rng) {
  if (end <= begin) return;
  const double amplitude = amplitude_for_dbfs(level_dbfs);
  const auto unit = unit_region(end - begin, waveform, rng);
  for (std::size_t i = begin; i < end; ++i) {
    const double v = std::round(unit[i - begin] * amplitude);
    samples[i] = static_cast<std::int16_t>(std::clamp(v, -32768.0, 32767.0));
  }
}

std::size_t to_sample(double seconds) {
  return static_cast<std::size_t>(std::llround(seconds * kCanonicalSampleRate));
}

void validate(const FixtureSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidSpec, what); };
  if (!(spec.duration_seconds > 0.0) || spec.duration_seconds > kMaxClipSeconds) {
    fail("duration must be in (0, 7200] seconds");
  }
  if (to_sample(spec.duration_seconds) == 0) fail("duration rounds to zero samples");
  if (!(spec.noise_floor_dbfs <= 0.0)) fail("noise floor must be <= 0 dBFS");
  auto bursts = spec.speech_bursts;
  std::sort(bursts.begin(), bursts.end(),
            [](const SpeechBurst& a, const SpeechBurst& b) { return a.start_s < b.start_s; });
  for (std::size_t i = 0; i < bursts.size(); ++i) {
    const auto& b = bursts[i];
    if (!(b.start_s >= 0.0 && b.start_s < b.end_s && b.end_s <= spec.duration_seconds)) {
      fail("burst outside [0, duration] or empty");
    }
    if (!(b.level_dbfs <= 0.0)) fail("burst level must be <= 0 dBFS");
    if (i > 0 && b.start_s < bursts[i - 1].end_s) fail("bursts overlap");
  }
}

}  // namespace

Fixture synthesize(const FixtureSpec& spec, std::string source_id) {
  validate(spec);
  auto bursts = spec.speech_bursts;
  std::sort(bursts.begin(), bursts.end(),
            [](const SpeechBurst& a, const SpeechBurst& b) { return a.start_s < b.start_s; });

  SplitMix64 rng(spec.seed);
  const std::size_t total = to_sample(spec.duration_seconds);
  std::vector<std::int16_t> samples(total, 0);

  std::size_t cursor = 0;
  std::vector<Segment> segments;
  for (const SpeechBurst& b : bursts) {
    const std::size_t begin = std::min(to_sample(b.start_s), total);
    const std::size_t end = std::min(to_sample(b.end_s), total);
    fill_region(samples, cursor, begin, spec.noise_floor_dbfs, Waveform::kWhiteNoise, rng);
    fill_region(samples, begin, end, b.level_dbfs, spec.waveform, rng);
    cursor = end;
    segments.push_back({b.start_s, b.end_s});
  }
  fill_region(samples, cursor, total, spec.noise_floor_dbfs, Waveform::kWhiteNoise, rng);

  SegmentLabels labels{normalize_segments(std::move(segments)), source_id};
  return Fixture{AudioClip(std::move(samples), kCanonicalSampleRate, std::move(source_id)),
                 std::move(labels)};
}

void write_fixture(const std::filesystem::path& dir, const Fixture& fixture) {
  std::filesystem::create_directories(dir);
  const std::string& name = fixture.clip.source_id();
  write_wav(dir / (name + ".wav"), fixture.clip);
  write_labels(dir / (name + ".labels.tsv"), fixture.labels);
}

std::vector<Fixture> make_dataset(const DatasetOptions& options) {
  if (options.clip_count == 0 || options.clip_seconds == 0 || options.floors_dbfs.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "need at least one clip, one second, one floor");
  }
  if (options.burst_ms == 0 || options.burst_ms % 10 != 0) {
    throw Error(ErrorCode::kInvalidSpec, "burst length must be a positive multiple of 10 ms");
  }
  if (!(options.target_prevalence > 0.0 && options.target_prevalence < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "target prevalence must lie in (0, 1)");
  }

  // Layout is computed in 10 ms units so every edge lands on the finest grid.
  const std::int64_t total_units = static_cast<std::int64_t>(options.clip_seconds) * 100;
  const std::int64_t burst_units = options.burst_ms / 10;
  const std::int64_t burst_count = std::max<std::int64_t>(
      1, std::llround(options.target_prevalence * static_cast<double>(total_units) /
                      static_cast<double>(burst_units)));
  const std::int64_t free_units = total_units - burst_count * burst_units;
  if (free_units <= 0) {
    throw Error(ErrorCode::kInvalidSpec, "bursts do not fit in the clip");
  }

  SplitMix64 layout_rng(options.seed);
  std::vector<Fixture> out;
  out.reserve(options.clip_count);
  for (std::size_t c = 0; c < options.clip_count; ++c) {
    const std::size_t gaps = static_cast<std::size_t>(burst_count) + 1;
    std::vector<double> weights(gaps);
    for (double& w : weights) w = -std::log1p(-layout_rng.uniform());
    const auto pauses = static_cast<std::size_t>(std::max(
        1.0, std::round(static_cast<double>(options.clip_seconds) / options.pause_every_s)));
    for (std::size_t p = 0; p < pauses; ++p) {
      weights[static_cast<std::size_t>(layout_rng.next() % gaps)] += 12.0;
    }
    double weight_sum = 0.0;
    for (double w : weights) weight_sum += w;

    std::vector<std::int64_t> gap_units(gaps);
    std::int64_t assigned = 0;
    for (std::size_t g = 0; g < gaps; ++g) {
      gap_units[g] = static_cast<std::int64_t>(
          std::floor(static_cast<double>(free_units) * weights[g] / weight_sum));
      assigned += gap_units[g];
    }
    gap_units.back() += free_units - assigned;

    FixtureSpec spec;
    spec.duration_seconds = static_cast<double>(options.clip_seconds);
    spec.noise_floor_dbfs = options.floors_dbfs[c % options.floors_dbfs.size()];
    spec.seed = layout_rng.next();
    spec.waveform = options.waveform;
    std::int64_t cursor = 0;
    for (std::int64_t b = 0; b < burst_count; ++b) {
      cursor += gap_units[static_cast<std::size_t>(b)];
      spec.speech_bursts.push_back({static_cast<double>(cursor) / 100.0,
                                    static_cast<double>(cursor + burst_units) / 100.0,
                                    options.burst_dbfs});
      cursor += burst_units;
    }

    char name[32];
    std::snprintf(name, sizeof(name), "fixture_%03zu", c);
    out.push_back(synthesize(spec, name));
  }
  return out;
}

}  // namespace vadbench
