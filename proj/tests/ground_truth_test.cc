#include "vadbench/ground_truth.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.h"

namespace vadbench {
namespace {

using testing::expect_code;
using testing::TempDir;
using testing::write_file;

WindowGrid grid_seconds(double seconds, std::uint32_t window_ms) {
  return make_grid(static_cast<std::size_t>(seconds * 16000), window_ms, 16000);
}

TEST(ParseLabels, MergesOverlaps) {
  TempDir dir;
  write_file(dir / "a.labels.tsv", "1.0\t2.0\tspeech\n1.5\t3.0\n");
  const auto labels = parse_labels(dir / "a.labels.tsv");
  EXPECT_EQ(labels.segments, (std::vector<Segment>{{1.0, 3.0}}));
  EXPECT_EQ(labels.source_id, "a");
}

TEST(ParseLabels, SortsAndMergesTouching) {
  TempDir dir;
  write_file(dir / "b.tsv", "5.0\t6.0\n1.0\t2.0\n\n2.0\t2.5\tx y z\r\n");
  const auto labels = parse_labels(dir / "b.tsv");
  EXPECT_EQ(labels.segments, (std::vector<Segment>{{1.0, 2.5}, {5.0, 6.0}}));
}

TEST(ParseLabels, Errors) {
  TempDir dir;
  write_file(dir / "rev.tsv", "2.0\t1.0\n");
  expect_code(ErrorCode::kEndBeforeStart, [&] { parse_labels(dir / "rev.tsv"); });
  write_file(dir / "neg.tsv", "-1.0\t1.0\n");
  expect_code(ErrorCode::kNegativeTime, [&] { parse_labels(dir / "neg.tsv"); });
  write_file(dir / "junk.tsv", "one\ttwo\n");
  expect_code(ErrorCode::kMalformedLabelFile, [&] { parse_labels(dir / "junk.tsv"); });
  write_file(dir / "cols.tsv", "1.0 2.0\n");
  expect_code(ErrorCode::kMalformedLabelFile, [&] { parse_labels(dir / "cols.tsv"); });
}

TEST(ParseLabels, PointLabelsAreDropped) {
  TempDir dir;
  write_file(dir / "p.tsv", "1.0\t1.0\tmarker\n3.0\t4.0\n");
  EXPECT_EQ(parse_labels(dir / "p.tsv").segments, (std::vector<Segment>{{3.0, 4.0}}));
}

TEST(WindowLabels, AnyOverlapRule) {
  // 100 ms windows are [k/10, (k+1)/10); use 50 ms for the 1.95 case.
  SegmentLabels seg{{{1.0, 2.0}}, "c"};
  const auto g50 = grid_seconds(3.0, 50);
  const auto t50 = window_labels(seg, g50);
  // [1.95, 2.00) overlaps, [2.00, 2.05) only touches.
  EXPECT_TRUE(t50.labels[39]);
  EXPECT_FALSE(t50.labels[40]);
  EXPECT_FALSE(t50.labels[19]);
  EXPECT_TRUE(t50.labels[20]);

  // Same geometry shifted by 50 ms: window [2.0, 2.1) straddles the end.
  SegmentLabels shifted{{{1.05, 2.05}}, "c"};
  const auto t100 = window_labels(shifted, grid_seconds(3.0, 100));
  EXPECT_TRUE(t100.labels[20]);   // [2.0, 2.1) overlaps [1.05, 2.05)
  EXPECT_FALSE(t100.labels[21]);  // [2.1, 2.2)
  EXPECT_TRUE(t100.labels[10]);   // [1.0, 1.1)
  EXPECT_FALSE(t100.labels[9]);
}

TEST(WindowLabels, NoSegments) {
  const auto t = window_labels(SegmentLabels{{}, "e"}, grid_seconds(1.0, 100));
  EXPECT_EQ(t.labels, std::vector<bool>(10, false));
}

TEST(WindowLabels, IndependentOfInputOrder) {
  std::mt19937 rng(1);
  std::vector<Segment> segs = {{0.1, 0.3}, {0.5, 0.52}, {0.9, 1.4}, {2.0, 2.01}};
  const auto grid = grid_seconds(3.0, 20);
  const auto expected = window_labels(SegmentLabels{segs, "o"}, grid).labels;
  for (int i = 0; i < 10; ++i) {
    std::shuffle(segs.begin(), segs.end(), rng);
    EXPECT_EQ(window_labels(SegmentLabels{segs, "o"}, grid).labels, expected);
  }
}

TEST(Prevalence, Examples) {
  EXPECT_NEAR(prevalence({{true, true, false, false, false}, 100, "x"}), 0.4, 1e-15);
  EXPECT_EQ(prevalence({{true, true}, 100, "x"}), 1.0);
  EXPECT_EQ(prevalence({{false, false}, 100, "x"}), 0.0);
  expect_code(ErrorCode::kEmptyTrack, [] { prevalence({{}, 100, "x"}); });
}

TEST(ClipToDuration, ClipsAndFlags) {
  SegmentLabels seg{{{1.0, 2.0}, {2.5, 4.0}, {5.0, 6.0}}, "d"};
  const auto out = clip_to_duration(seg, 3.0);
  EXPECT_TRUE(out.clipped);
  EXPECT_EQ(out.labels.segments, (std::vector<Segment>{{1.0, 2.0}, {2.5, 3.0}}));
  EXPECT_FALSE(clip_to_duration(SegmentLabels{{{0.0, 1.0}}, "d"}, 3.0).clipped);
}

// Coarsening by an integer factor never lowers prevalence over the region
// both grids cover.
TEST(WindowLabels, PrevalenceMonotoneUnderCoarsening) {
  std::mt19937 rng(21);
  const std::vector<std::uint32_t> sizes = {10, 20, 100, 200, 1000, 2000, 10000};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Segment> segs;
    double t = 0.0;
    while (true) {
      t += (rng() % 3000) / 1000.0;
      const double len = 0.001 + (rng() % 800) / 1000.0;
      if (t + len >= 40.0) break;
      segs.push_back({t, t + len});
      t += len;
    }
    const SegmentLabels labels{segs, "m"};
    double prev = -1.0;
    for (std::uint32_t w : sizes) {
      const auto track = window_labels(labels, grid_seconds(40.0, w));
      const double p = prevalence(track);
      ASSERT_GE(p, prev) << "window " << w;
      prev = p;
    }
  }
}

}  // namespace
}  // namespace vadbench
