#include "vadbench/engines.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.h"

namespace vadbench {
namespace {

using testing::expect_code;

// Independent dBFS: long double accumulation, no floor.
long double oracle_dbfs(const std::vector<std::int16_t>& s) {
  long double acc = 0;
  for (auto v : s) acc += static_cast<long double>(v) * v;
  return 20.0L * std::log10(std::sqrt(acc / s.size()) / 32768.0L);
}

TEST(RmsDbfs, SilenceHitsFloor) {
  EXPECT_EQ(rms_dbfs(std::vector<std::int16_t>(160, 0)), -100.0);
}

TEST(RmsDbfs, NearFullScaleConstant) {
  // 20 log10(32767 / 32768)
  EXPECT_NEAR(rms_dbfs(std::vector<std::int16_t>(160, 32767)), -0.00026507636037961915, 1e-12);
  EXPECT_NEAR(rms_dbfs(std::vector<std::int16_t>(160, -32768)), 0.0, 1e-15);
}

TEST(RmsDbfs, FullScaleSine) {
  // 100 Hz at 16 kHz: 160 samples per period, 10 periods.
  std::vector<std::int16_t> sine(1600);
  for (std::size_t i = 0; i < sine.size(); ++i) {
    sine[i] = static_cast<std::int16_t>(
        std::lround(32767.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 160.0)));
  }
  const double got = rms_dbfs(sine);
  EXPECT_NEAR(got, static_cast<double>(oracle_dbfs(sine)), 1e-9);
  // 20 log10(32767 / (32768 sqrt 2))
  EXPECT_NEAR(got, -3.0105650330001916, 1e-3);
}

TEST(RmsDbfs, EmptyWindow) {
  expect_code(ErrorCode::kEmptyWindow, [] { rms_dbfs({}); });
  expect_code(ErrorCode::kEmptyWindow, [] { rms_vad_score({}); });
}

TEST(RmsScore, LinearMapAndClipping) {
  EXPECT_EQ(rms_vad_score(std::vector<std::int16_t>(320, 0)), 0.0);
  EXPECT_EQ(score_from_dbfs(-50.0).p, 0.5);
  EXPECT_EQ(score_from_dbfs(-100.0).p, 0.0);
  EXPECT_EQ(score_from_dbfs(0.0).p, 1.0);

  const RmsScore hot = score_from_dbfs(3.0);
  EXPECT_NEAR(hot.p_intermediate, 1.03, 1e-15);
  EXPECT_EQ(hot.p, 1.0);
  const RmsScore cold = score_from_dbfs(-130.0);
  EXPECT_NEAR(cold.p_intermediate, -0.3, 1e-15);
  EXPECT_EQ(cold.p, 0.0);
}

TEST(Aggregate, Examples) {
  EXPECT_NEAR(aggregate_subwindows(std::vector<double>{0.2, 0.4, 0.6}), 0.4, 1e-15);
  EXPECT_EQ(aggregate_subwindows(std::vector<double>{0.7}), 0.7);
  EXPECT_EQ(aggregate_subwindows(std::vector<double>(10, 1.0)), 1.0);
  expect_code(ErrorCode::kEmptyInput, [] { aggregate_subwindows({}); });
}

TEST(ScoreClipRms, SilentWindow) {
  const AudioClip clip(std::vector<std::int16_t>(1600, 0), 16000, "s");
  const auto trace = score_clip_rms(clip, make_grid(clip.size(), 100, 16000), 10);
  ASSERT_EQ(trace.scores.size(), 1u);
  EXPECT_EQ(trace.scores[0], 0.0);
  EXPECT_EQ(trace.engine_id, "RMS");
}

TEST(ScoreClipRms, HalfLoudHalfSilent) {
  // Five 10 ms subwindows at ~-40 dBFS (constant 328) then five silent.
  std::vector<std::int16_t> samples(1600, 0);
  std::fill(samples.begin(), samples.begin() + 800, static_cast<std::int16_t>(328));
  const AudioClip clip(samples, 16000, "h");
  const auto trace = score_clip_rms(clip, make_grid(clip.size(), 100, 16000), 10);

  const std::vector<std::int16_t> loud(160, 328);
  const double loud_p = (static_cast<double>(oracle_dbfs(loud)) + 100.0) / 100.0;
  EXPECT_NEAR(trace.scores[0], 5.0 * loud_p / 10.0, 1e-12);
  // (5 * 0.6 + 5 * 0.0) / 10 at exactly -40 dBFS
  EXPECT_NEAR(trace.scores[0], 0.30, 1e-3);
}

TEST(ScoreClipRms, DegenerateSubdivision) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3000, 3000);
  std::vector<std::int16_t> samples(16000);
  for (auto& s : samples) s = static_cast<std::int16_t>(d(rng));
  const AudioClip clip(samples, 16000, "d");
  const auto grid = make_grid(clip.size(), 50, 16000);
  const auto trace = score_clip_rms(clip, grid, 50);
  ASSERT_EQ(trace.scores.size(), grid.size());
  for (const auto& span : grid.spans()) {
    EXPECT_EQ(trace.scores[span.index],
              rms_vad_score(clip.samples().subspan(span.start_sample, span.length())));
  }
}

TEST(ScoreClipRms, AllSilentTraceIsZero) {
  const AudioClip clip(std::vector<std::int16_t>(48000, 0), 16000, "z");
  for (std::uint32_t w : {10u, 100u, 1000u}) {
    const auto trace = score_clip_rms(clip, make_grid(clip.size(), w, 16000), 10);
    for (double s : trace.scores) ASSERT_EQ(s, 0.0);
  }
}

TEST(RmsProperties, BoundedAndMonotoneInGain) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int peak = 1 + static_cast<int>(rng() % 16000);
    std::uniform_int_distribution<int> d(-peak, peak);
    std::vector<std::int16_t> w(1 + rng() % 800);
    for (auto& s : w) s = static_cast<std::int16_t>(d(rng));
    const double p = rms_vad_score(w);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 1.0);

    const double gain = 1.0 + (rng() % 1000) / 1000.0;  // <= 2, peak <= 16000 stays in range
    std::vector<std::int16_t> louder(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      louder[i] = static_cast<std::int16_t>(std::lround(w[i] * gain));
    }
    ASSERT_GE(rms_vad_score(louder), p);
  }
}

TEST(RmsProperties, FullRangeInputStaysInUnitInterval) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-32768, 32767);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int16_t> w(1 + rng() % 400);
    for (auto& s : w) s = static_cast<std::int16_t>(d(rng));
    const double p = rms_vad_score(w);
    ASSERT_TRUE(p >= 0.0 && p <= 1.0);
  }
}

TEST(AggregateProperties, MeanWithinRange) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> xs(1 + rng() % 50);
    for (auto& x : xs) x = u(rng);
    const double m = aggregate_subwindows(xs);
    ASSERT_GE(m, *std::min_element(xs.begin(), xs.end()));
    ASSERT_LE(m, *std::max_element(xs.begin(), xs.end()));
  }
}

}  // namespace
}  // namespace vadbench
