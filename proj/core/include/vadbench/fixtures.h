#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vadbench/audio.h"
#include "vadbench/ground_truth.h"

namespace vadbench {

// SplitMix64. Small, fully specified, so fixtures reproduce anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class Waveform { kWhiteNoise, kTone };

struct SpeechBurst {
  double start_s = 0.0;
  double end_s = 0.0;
  double level_dbfs = -20.0;
};

struct FixtureSpec {
  double duration_seconds = 10.0;
  std::vector<SpeechBurst> speech_bursts;
  double noise_floor_dbfs = -80.0;
  std::uint64_t seed = 0;
  Waveform waveform = Waveform::kWhiteNoise;
};

struct Fixture {
  AudioClip clip;
  SegmentLabels labels;
};

// Burst regions are filled at their RMS level and everything else with
// white noise at the floor level; each region is normalized to its target
// RMS before int16 rounding. Labels equal the bursts. Throws kInvalidSpec.
Fixture synthesize(const FixtureSpec& spec, std::string source_id = "fixture");

// Writes <dir>/<source_id>.wav and <dir>/<source_id>.labels.tsv.
void write_fixture(const std::filesystem::path& dir, const Fixture& fixture);

struct DatasetOptions {
  std::size_t clip_count = 10;
  std::uint32_t clip_seconds = 60;
  std::uint32_t burst_ms = 200;
  double burst_dbfs = -20.0;
  std::vector<double> floors_dbfs = {-80.0};  // cycled across clips
  double target_prevalence = 0.2;
  // Roughly one long pause per this many seconds, so coarse windows still
  // see silence.
  double pause_every_s = 20.0;
  std::uint64_t seed = 1;
  Waveform waveform = Waveform::kWhiteNoise;
};

// Fixed-length bursts on a 10 ms grid with exponential gaps plus a few
// long pauses. Clips are named fixture_000, fixture_001, ...
std::vector<Fixture> make_dataset(const DatasetOptions& options);

}  // namespace vadbench
