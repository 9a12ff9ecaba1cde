#include "vadbench/harness.h"

#include <gtest/gtest.h>

#include <json.hpp>

#include "test_util.h"
#include "vadbench/error.h"

namespace vadbench::harness {
namespace {

using testing::expect_code;
using testing::read_file;
using testing::TempDir;
namespace fs = std::filesystem;

void small_dataset(const fs::path& dir) {
  DatasetOptions opt;
  opt.clip_count = 2;
  opt.clip_seconds = 20;
  opt.floors_dbfs = {-80.0, -60.0};
  opt.seed = 4;
  for (const auto& f : make_dataset(opt)) write_fixture(dir, f);
}

RunConfig base_config(const TempDir& data, const TempDir& out) {
  RunConfig config;
  config.dataset_dir = data.path();
  config.output_dir = out.path();
  return config;
}

TEST(Engines, Parsing) {
  EXPECT_EQ(parse_engine("rms").kind, EngineSpec::Kind::kRms);
  const auto ext = parse_engine("external:silero");
  EXPECT_EQ(ext.kind, EngineSpec::Kind::kExternal);
  EXPECT_EQ(ext.engine_id(), "silero");
  EXPECT_EQ(parse_engine_list("rms, external:webrtc").size(), 2u);
  expect_code(ErrorCode::kConfigError, [] { parse_engine("silero"); });
  expect_code(ErrorCode::kConfigError, [] { parse_engine("external:"); });
  expect_code(ErrorCode::kConfigError, [] { parse_engine("external:a/b"); });
  EXPECT_EQ(parse_window_list("10,100, 1000"), (std::vector<std::uint32_t>{10, 100, 1000}));
  expect_code(ErrorCode::kConfigError, [] { parse_window_list(""); });
  expect_code(ErrorCode::kConfigError, [] { parse_window_list("10,x"); });
}

TEST(Evaluate, WritesReportCurvesAndManifest) {
  TempDir data, out;
  small_dataset(data.path());
  RunConfig config = base_config(data, out);
  config.window_sizes_ms = {100};
  const RunResult result = run_evaluate(config);

  for (const char* name : {"report_rms_100ms.json", "roc_rms_100ms.csv", "pr_rms_100ms.csv",
                           "warnings.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const auto report = nlohmann::json::parse(read_file(out / "report_rms_100ms.json"));
  for (const char* field : {"engine_id", "window_ms", "auc", "ap", "mcc_best", "threshold_best"}) {
    EXPECT_TRUE(report.contains(field)) << field;
  }
  EXPECT_EQ(report["engine_id"], "RMS");
  EXPECT_EQ(report["window_ms"], 100);
  EXPECT_GT(report["auc"].get<double>(), 0.99);
  EXPECT_EQ(report["per_file"].size(), 2u);
  EXPECT_EQ(read_file(out / "roc_rms_100ms.csv").rfind("threshold,x,y\n", 0), 0u);

  const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
  EXPECT_EQ(manifest["files"].size(), 4u);
  for (const auto& f : manifest["files"]) {
    EXPECT_EQ(f["sha256"].get<std::string>().size(), 64u);
    EXPECT_EQ(f["bytes"].get<std::size_t>(), read_file(out / f["path"].get<std::string>()).size());
  }
  EXPECT_EQ(result.files.back(), "manifest.json");
}

TEST(Evaluate, ByteIdenticalReruns) {
  TempDir data, out1, out2;
  small_dataset(data.path());
  RunConfig a = base_config(data, out1);
  RunConfig b = base_config(data, out2);
  a.window_sizes_ms = b.window_sizes_ms = {50, 200};
  const auto ra = run_evaluate(a);
  run_evaluate(b);
  for (const auto& f : ra.files) EXPECT_EQ(read_file(out1 / f.string()), read_file(out2 / f.string()));
}

TEST(Evaluate, MissingLabelsIsDataError) {
  TempDir data, out;
  small_dataset(data.path());
  fs::remove(data / "fixture_001.labels.tsv");
  try {
    run_evaluate(base_config(data, out));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDataError);
    EXPECT_NE(std::string(e.what()).find("fixture_001.labels.tsv"), std::string::npos);
  }
}

TEST(Evaluate, MissingExternalTracesListed) {
  TempDir data, out;
  small_dataset(data.path());
  RunConfig config = base_config(data, out);
  config.engines = {parse_engine("external:silero")};
  try {
    run_evaluate(config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDataError);
    const std::string what = e.what();
    EXPECT_NE(what.find("fixture_000.silero.trace.csv"), std::string::npos);
    EXPECT_NE(what.find("fixture_001.silero.trace.csv"), std::string::npos);
  }
}

TEST(Evaluate, ExternalTracesAreImported) {
  TempDir data, out;
  small_dataset(data.path());
  // A "perfect" 16 ms engine derived from the labels.
  const Dataset ds = load_dataset(data.path(), {});
  for (const auto& dc : ds.clips) {
    NativeTrace native;
    native.frame_samples = 256;
    const std::size_t count = dc.clip.size() / 256;
    for (std::size_t k = 0; k < count; ++k) {
      const double t0 = k * 256 / 16000.0, t1 = (k + 1) * 256 / 16000.0;
      bool speech = false;
      for (const auto& s : dc.labels.segments) speech |= s.start < t1 && t0 < s.end;
      native.scores.push_back(speech ? 0.9 : 0.1);
    }
    write_native_trace(data / (dc.clip.source_id() + ".silero.trace.csv"), native);
  }
  RunConfig config = base_config(data, out);
  config.engines = parse_engine_list("rms,external:silero");
  config.window_sizes_ms = {100};
  run_evaluate(config);
  const auto report = nlohmann::json::parse(read_file(out / "report_silero_100ms.json"));
  EXPECT_EQ(report["engine_id"], "silero");
  EXPECT_GT(report["auc"].get<double>(), 0.95);
}

TEST(Evaluate, ConfigErrors) {
  TempDir data, out;
  small_dataset(data.path());
  RunConfig config = base_config(data, out);
  config.window_sizes_ms = {5};
  expect_code(ErrorCode::kConfigError, [&] { run_evaluate(config); });
  config.window_sizes_ms = {100};
  config.mcc_step = 0.3;
  expect_code(ErrorCode::kInvalidStep, [&] { run_evaluate(config); });
  config.mcc_step = 0.05;
  config.rms_native_ms = 200;
  expect_code(ErrorCode::kNativeLargerThanWindow, [&] { run_evaluate(config); });
  TempDir empty;
  config = base_config(empty, out);
  expect_code(ErrorCode::kConfigError, [&] { run_evaluate(config); });
}

TEST(Evaluate, LabelsPastEndAreClippedWithWarning) {
  TempDir data, out;
  small_dataset(data.path());
  {
    std::ofstream f(data / "fixture_000.labels.tsv", std::ios::app);
    f << "19.5\t25.0\tlate\n";
  }
  const auto result = run_evaluate(base_config(data, out));
  ASSERT_FALSE(result.warnings.empty());
  EXPECT_EQ(result.warnings[0].kind, "labels_clipped");
  const auto warnings = nlohmann::json::parse(read_file(out / "warnings.json"));
  EXPECT_EQ(warnings[0]["source_id"], "fixture_000");
}

TEST(SweepWindows, SummaryRows) {
  TempDir data, out;
  small_dataset(data.path());
  RunConfig config = base_config(data, out);
  config.window_sizes_ms = {10, 100, 1000};
  run_sweep_windows(config);
  const std::string summary = read_file(out / "sweep_windows.csv");
  EXPECT_EQ(summary.rfind("engine,window_ms,auc,ap\n", 0), 0u);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 4);
  EXPECT_NE(summary.find("\nRMS,1000,"), std::string::npos);
  const std::string per_file = read_file(out / "sweep_windows_per_file.csv");
  EXPECT_EQ(std::count(per_file.begin(), per_file.end(), '\n'), 1 + 3 * 2);

  config.window_sizes_ms = {100};
  expect_code(ErrorCode::kConfigError, [&] { run_sweep_windows(config); });
  config.window_sizes_ms = {};
  expect_code(ErrorCode::kConfigError, [&] { run_sweep_windows(config); });
}

TEST(SweepWindows, DegenerateWindowSizeLeavesEmptyRow) {
  TempDir data, out;
  FixtureSpec spec;
  spec.duration_seconds = 20.0;
  spec.speech_bursts = {{1.0, 2.0, -20.0}, {6.0, 7.0, -20.0}, {12.0, 13.0, -20.0}, {16.0, 17.0, -20.0}};
  spec.noise_floor_dbfs = -70.0;
  write_fixture(data.path(), synthesize(spec, "two_halves"));
  RunConfig config = base_config(data, out);
  config.window_sizes_ms = {100, 5000, 10000};
  const auto result = run_sweep_windows(config);
  const std::string summary = read_file(out / "sweep_windows.csv");
  EXPECT_NE(summary.find("\nRMS,100,1,1\n"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\nRMS,10000,,\n"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\nRMS,5000,,\n"), std::string::npos) << summary;
  EXPECT_EQ(std::count_if(result.warnings.begin(), result.warnings.end(),
                          [](const Warning& w) { return w.kind == "window_undefined"; }),
            2);

  config.window_sizes_ms = {5000, 10000};
  expect_code(ErrorCode::kDataError, [&] { run_sweep_windows(config); });
}

TEST(SweepHysteresis, SurfaceBestAndComparison) {
  TempDir data, out;
  small_dataset(data.path());
  RunConfig config = base_config(data, out);
  config.hysteresis_step = 0.1;
  run_sweep_hysteresis(config);

  const std::string surface = read_file(out / "hysteresis_surface_rms.csv");
  // (1/step + 1)(1/step + 2)/2 rows plus the header.
  EXPECT_EQ(std::count(surface.begin(), surface.end(), '\n'), 1 + 11 * 12 / 2);
  const auto best = nlohmann::json::parse(read_file(out / "hysteresis_best_rms.json"));
  EXPECT_TRUE(best.contains("best_low") && best.contains("best_high") && best.contains("best_mcc"));
  const auto cmp = nlohmann::json::parse(read_file(out / "hysteresis_comparison.json"));
  EXPECT_EQ(cmp["window_ms"], 50);
  const auto& e = cmp["engines"][0];
  EXPECT_GE(e["mcc_hysteresis"].get<double>(), e["mcc"].get<double>());
  EXPECT_TRUE(fs::exists(out / "mcc_threshold_rms.csv"));

  config.window_sizes_ms = {50, 100};
  expect_code(ErrorCode::kConfigError, [&] { run_sweep_hysteresis(config); });
}

TEST(MakeFixtures, WritesLoadableDataset) {
  TempDir out;
  DatasetOptions opt;
  opt.clip_count = 2;
  opt.clip_seconds = 10;
  run_make_fixtures(out.path(), opt);
  const Dataset ds = load_dataset(out.path(), {});
  EXPECT_EQ(ds.clips.size(), 2u);
  EXPECT_FALSE(ds.clips[0].labels.segments.empty());
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

}  // namespace
}  // namespace vadbench::harness
