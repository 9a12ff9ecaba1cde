#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vadbench/audio.h"
#include "vadbench/engines.h"
#include "vadbench/fixtures.h"
#include "vadbench/framing.h"
#include "vadbench/ground_truth.h"

namespace vadbench::harness {

// "rms" or "external:<id>". External scores are read from
// <name>.<id>.trace.csv next to each wav.
struct EngineSpec {
  enum class Kind { kRms, kExternal };
  Kind kind = Kind::kRms;
  std::string id = "rms";

  std::string engine_id() const;  // "RMS" or the external id
  std::string file_tag() const;   // used in output and trace file names
};

EngineSpec parse_engine(const std::string& text);
std::vector<EngineSpec> parse_engine_list(const std::string& csv);
std::vector<std::uint32_t> parse_window_list(const std::string& csv);

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::vector<EngineSpec> engines = {EngineSpec{}};
  std::vector<std::uint32_t> window_sizes_ms;
  std::optional<double> hysteresis_step;
  std::filesystem::path output_dir;
  // RMS subwindow size; default min(50 ms, window).
  std::optional<std::uint32_t> rms_native_ms;
  double mcc_step = 0.05;
};

struct Warning {
  std::string source_id;
  std::string kind;
  std::string message;
};

struct DatasetClip {
  AudioClip clip;
  SegmentLabels labels;
  std::filesystem::path wav_path;
};

struct Dataset {
  std::vector<DatasetClip> clips;  // sorted by source_id
  std::vector<Warning> warnings;
};

std::filesystem::path trace_path(const DatasetClip& clip, const EngineSpec& engine);

// Pairs every <name>.wav with <name>.labels.tsv, and checks that each
// external engine has a trace for every clip. Labels running past the end
// of the audio are clipped with a warning.
Dataset load_dataset(const std::filesystem::path& dir, const std::vector<EngineSpec>& engines);

std::uint32_t rms_native_for(const RunConfig& config, std::uint32_t window_ms);

PredictionTrace score_clip(const DatasetClip& clip, const EngineSpec& engine,
                           const WindowGrid& grid, const RunConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> files;  // relative to output_dir, manifest last
  std::vector<Warning> warnings;
};

// One report JSON plus ROC and PR curve CSVs per engine and window size.
RunResult run_evaluate(const RunConfig& config);

// Summary `engine,window_ms,auc,ap` and per-file distribution CSVs.
RunResult run_sweep_windows(const RunConfig& config);

// MCC surface, best pair and plain threshold sweep per engine, plus a
// comparison JSON with `mcc` and `mcc_hysteresis` per engine.
RunResult run_sweep_hysteresis(const RunConfig& config);

RunResult run_make_fixtures(const std::filesystem::path& output_dir,
                            const DatasetOptions& options);

}  // namespace vadbench::harness
