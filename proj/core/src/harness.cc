#include "vadbench/harness.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>

#include "csv.h"
#include "vadbench/error.h"
#include "vadbench/hysteresis.h"
#include "vadbench/metrics.h"
#include "vadbench/report_io.h"

namespace vadbench::harness {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfigError, what);
}

std::string sha256_hex(std::string_view body) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(body.data(), body.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIoFailure, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Serialized writer that records every emitted file for the manifest.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir_.string());
  }

  void write(const std::string& name, const std::string& body) {
    csv::write_text(dir_ / name, body);
    entries_[name] = {sha256_hex(body), body.size()};
  }

  RunResult finish(std::vector<Warning> warnings) {
    ordered_json list = ordered_json::array();
    for (const Warning& w : warnings) {
      list.push_back({{"source_id", w.source_id}, {"kind", w.kind}, {"message", w.message}});
    }
    write("warnings.json", list.dump(2) + "\n");

    ordered_json files = ordered_json::array();
    RunResult result;
    for (const auto& [name, entry] : entries_) {
      files.push_back({{"path", name}, {"sha256", entry.first}, {"bytes", entry.second}});
      result.files.push_back(name);
    }
    ordered_json manifest;
    manifest["files"] = std::move(files);
    csv::write_text(dir_ / "manifest.json", manifest.dump(2) + "\n");
    result.files.push_back("manifest.json");
    result.warnings = std::move(warnings);
    return result;
  }

 private:
  fs::path dir_;
  std::map<std::string, std::pair<std::string, std::size_t>> entries_;
};

std::string window_tag(const EngineSpec& engine, std::uint32_t window_ms) {
  return engine.file_tag() + "_" + std::to_string(window_ms) + "ms";
}

void validate_config(const RunConfig& config) {
  if (config.dataset_dir.empty()) config_error("--dataset is required");
  if (config.output_dir.empty()) config_error("--out is required");
  if (config.engines.empty()) config_error("no engines selected");
  for (std::uint32_t w : config.window_sizes_ms) {
    if (w < kMinWindowMs || w > kMaxWindowMs) {
      config_error("window size " + std::to_string(w) + " ms outside [10, 10000]");
    }
    samples_for_ms(w, kCanonicalSampleRate);
  }
  if (config.rms_native_ms) samples_for_ms(*config.rms_native_ms, kCanonicalSampleRate);
  threshold_grid(config.mcc_step);
  if (config.hysteresis_step) threshold_grid(*config.hysteresis_step);
}

// Scores and labels for every clip that holds at least one full window.
std::vector<ClipScores> collect(const Dataset& data, const EngineSpec& engine,
                                std::uint32_t window_ms, const RunConfig& config,
                                std::vector<Warning>& warnings,
                                std::vector<PredictionTrace>* traces = nullptr,
                                std::vector<WindowLabelTrack>* tracks = nullptr) {
  std::vector<ClipScores> clips;
  for (const DatasetClip& dc : data.clips) {
    std::optional<WindowGrid> grid;
    try {
      grid = make_grid(dc.clip.size(), window_ms, dc.clip.sample_rate());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kClipShorterThanWindow) throw;
      warnings.push_back({dc.clip.source_id(), "clip_shorter_than_window",
                          "skipped at " + std::to_string(window_ms) + " ms: " + e.what()});
      continue;
    }
    auto trace = score_clip(dc, engine, *grid, config);
    auto track = window_labels(dc.labels, *grid);
    clips.push_back({dc.clip.source_id(), trace.scores, track.labels});
    if (traces) traces->push_back(std::move(trace));
    if (tracks) tracks->push_back(std::move(track));
  }
  if (clips.empty()) {
    throw Error(ErrorCode::kDataError,
                "no clip holds a full " + std::to_string(window_ms) + " ms window");
  }
  return clips;
}

void note_undefined(const MetricReport& report, std::vector<Warning>& warnings) {
  for (const auto& [id, m] : report.per_file) {
    if (!m.note.empty()) {
      warnings.push_back({id, "metric_undefined",
                          report.engine_id + " @ " + std::to_string(report.window_size_ms) +
                              " ms: " + m.note});
    }
  }
}

MetricReport pooled_report(const EngineSpec& engine, std::uint32_t window_ms,
                           std::vector<ClipScores> clips, double mcc_step) {
  try {
    return build_report(engine.engine_id(), window_ms, std::move(clips), mcc_step);
  } catch (const Error& e) {
    // A pooled metric that cannot be defined is a dataset problem.
    if (e.code() == ErrorCode::kSingleClassInput || e.code() == ErrorCode::kNoPositives) {
      throw Error(ErrorCode::kDataError, engine.engine_id() + " @ " +
                                             std::to_string(window_ms) + " ms: " + e.what());
    }
    throw;
  }
}

}  // namespace

std::string EngineSpec::engine_id() const { return kind == Kind::kRms ? kRmsEngineId : id; }

std::string EngineSpec::file_tag() const { return kind == Kind::kRms ? "rms" : id; }

EngineSpec parse_engine(const std::string& text) {
  const std::string t(csv::trim(text));
  if (t == "rms") return EngineSpec{};
  constexpr std::string_view kPrefix = "external:";
  if (t.starts_with(kPrefix)) {
    std::string id = t.substr(kPrefix.size());
    const bool ok = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
    if (!ok) config_error("bad external engine id in '" + t + "'");
    return EngineSpec{EngineSpec::Kind::kExternal, std::move(id)};
  }
  config_error("unknown engine '" + t + "' (expected rms or external:<id>)");
}

std::vector<EngineSpec> parse_engine_list(const std::string& list) {
  std::vector<EngineSpec> out;
  for (auto field : csv::split(list, ',')) {
    if (csv::trim(field).empty()) continue;
    out.push_back(parse_engine(std::string(field)));
  }
  if (out.empty()) config_error("engine list is empty");
  return out;
}

std::vector<std::uint32_t> parse_window_list(const std::string& list) {
  std::vector<std::uint32_t> out;
  for (auto field : csv::split(list, ',')) {
    if (csv::trim(field).empty()) continue;
    const auto v = csv::parse_int(field);
    if (!v || *v <= 0 || *v > 1'000'000) {
      config_error("bad window size '" + std::string(csv::trim(field)) + "'");
    }
    out.push_back(static_cast<std::uint32_t>(*v));
  }
  if (out.empty()) config_error("window list is empty");
  return out;
}

fs::path trace_path(const DatasetClip& clip, const EngineSpec& engine) {
  return clip.wav_path.parent_path() /
         (clip.clip.source_id() + "." + engine.file_tag() + ".trace.csv");
}

Dataset load_dataset(const fs::path& dir, const std::vector<EngineSpec>& engines) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) config_error("dataset directory " + dir.string() + " not found");

  std::vector<fs::path> wavs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      wavs.push_back(entry.path());
    }
  }
  std::sort(wavs.begin(), wavs.end());
  if (wavs.empty()) config_error("dataset directory " + dir.string() + " has no .wav files");

  std::vector<std::string> missing;
  for (const fs::path& wav : wavs) {
    const fs::path labels = dir / (wav.stem().string() + ".labels.tsv");
    if (!fs::exists(labels)) missing.push_back("missing labels file " + labels.string());
  }
  if (!missing.empty()) {
    std::string msg;
    for (const auto& m : missing) msg += "\n  " + m;
    throw Error(ErrorCode::kDataError, "incomplete dataset:" + msg);
  }

  Dataset data;
  for (const fs::path& wav : wavs) {
    auto clip = load_wav(wav);
    auto parsed = parse_labels(dir / (wav.stem().string() + ".labels.tsv"));
    parsed.source_id = clip.source_id();
    auto clipped = clip_to_duration(parsed, clip_duration_seconds(clip));
    if (clipped.clipped) {
      data.warnings.push_back({clip.source_id(), "labels_clipped",
                               "segments extend past the audio end (" +
                                   csv::format_double(clip_duration_seconds(clip)) +
                                   " s) and were clipped"});
    }
    data.clips.push_back({std::move(clip), std::move(clipped.labels), wav});
  }

  for (const EngineSpec& engine : engines) {
    if (engine.kind != EngineSpec::Kind::kExternal) continue;
    for (const DatasetClip& dc : data.clips) {
      const fs::path p = trace_path(dc, engine);
      if (!fs::exists(p)) missing.push_back("missing trace " + p.string());
    }
  }
  if (!missing.empty()) {
    std::string msg;
    for (const auto& m : missing) msg += "\n  " + m;
    throw Error(ErrorCode::kDataError, "missing external traces:" + msg);
  }
  return data;
}

std::uint32_t rms_native_for(const RunConfig& config, std::uint32_t window_ms) {
  const std::uint32_t native = config.rms_native_ms.value_or(std::min<std::uint32_t>(50, window_ms));
  if (native > window_ms) {
    throw Error(ErrorCode::kNativeLargerThanWindow,
                "RMS native " + std::to_string(native) + " ms exceeds the " +
                    std::to_string(window_ms) + " ms window");
  }
  return native;
}

PredictionTrace score_clip(const DatasetClip& clip, const EngineSpec& engine,
                           const WindowGrid& grid, const RunConfig& config) {
  if (engine.kind == EngineSpec::Kind::kRms) {
    return score_clip_rms(clip.clip, grid, rms_native_for(config, grid.window_size_ms()));
  }
  return import_trace(trace_path(clip, engine), grid, engine.engine_id(), clip.clip.source_id());
}

RunResult run_evaluate(const RunConfig& config) {
  validate_config(config);
  RunConfig cfg = config;
  if (cfg.window_sizes_ms.empty()) cfg.window_sizes_ms = {100};

  Dataset data = load_dataset(cfg.dataset_dir, cfg.engines);
  OutputSet out(cfg.output_dir);
  auto warnings = data.warnings;
  for (const EngineSpec& engine : cfg.engines) {
    for (std::uint32_t w : cfg.window_sizes_ms) {
      auto clips = collect(data, engine, w, cfg, warnings);
      const MetricReport report = pooled_report(engine, w, std::move(clips), cfg.mcc_step);
      note_undefined(report, warnings);
      const std::string tag = window_tag(engine, w);
      out.write("report_" + tag + ".json", report_json(report));
      out.write("roc_" + tag + ".csv", curve_csv(report.roc));
      out.write("pr_" + tag + ".csv", curve_csv(report.pr));
    }
  }
  return out.finish(std::move(warnings));
}

RunResult run_sweep_windows(const RunConfig& config) {
  validate_config(config);
  if (config.window_sizes_ms.size() < 2) {
    config_error("sweep-windows needs at least two window sizes");
  }
  Dataset data = load_dataset(config.dataset_dir, config.engines);
  OutputSet out(config.output_dir);
  auto warnings = data.warnings;

  std::string summary = "engine,window_ms,auc,ap\n";
  std::string per_file = "engine,window_ms,source_id,auc,ap,note\n";
  std::size_t defined = 0;
  for (const EngineSpec& engine : config.engines) {
    for (std::uint32_t w : config.window_sizes_ms) {
      const std::string prefix = engine.engine_id() + "," + std::to_string(w) + ",";
      std::optional<MetricReport> maybe;
      try {
        maybe = pooled_report(engine, w, collect(data, engine, w, config, warnings),
                              config.mcc_step);
      } catch (const Error& e) {
        // One degenerate window size leaves an empty row; the rest of the
        // sweep still stands.
        if (e.code() != ErrorCode::kDataError) throw;
        warnings.push_back({"", "window_undefined", e.what()});
        summary += prefix + ",\n";
        continue;
      }
      const MetricReport& report = *maybe;
      ++defined;
      note_undefined(report, warnings);
      summary += prefix + csv::format_double(report.roc.area) + "," +
                 csv::format_double(report.pr.area) + "\n";
      for (const auto& [id, m] : report.per_file) {
        per_file += prefix + csv_field(id) + "," +
                    (m.auc ? csv::format_double(*m.auc) : std::string()) + "," +
                    (m.ap ? csv::format_double(*m.ap) : std::string()) + "," +
                    csv_field(m.note) + "\n";
      }
    }
  }
  if (defined == 0) {
    throw Error(ErrorCode::kDataError, "no window size yields defined pooled metrics");
  }
  out.write("sweep_windows.csv", summary);
  out.write("sweep_windows_per_file.csv", per_file);
  return out.finish(std::move(warnings));
}

RunResult run_sweep_hysteresis(const RunConfig& config) {
  validate_config(config);
  RunConfig cfg = config;
  if (cfg.window_sizes_ms.empty()) cfg.window_sizes_ms = {50};
  if (cfg.window_sizes_ms.size() != 1) {
    config_error("sweep-hysteresis takes exactly one window size");
  }
  const std::uint32_t w = cfg.window_sizes_ms.front();
  const double step = cfg.hysteresis_step.value_or(0.05);

  Dataset data = load_dataset(cfg.dataset_dir, cfg.engines);
  OutputSet out(cfg.output_dir);
  auto warnings = data.warnings;

  ordered_json engines = ordered_json::array();
  for (const EngineSpec& engine : cfg.engines) {
    std::vector<PredictionTrace> traces;
    std::vector<WindowLabelTrack> tracks;
    auto clips = collect(data, engine, w, cfg, warnings, &traces, &tracks);
    const ClipScores pooled = pool_clips(std::move(clips));
    const auto sweep = mcc_threshold_sweep(pooled.scores, pooled.labels, step);
    const auto plain_best = std::max_element(
        sweep.begin(), sweep.end(),
        [](const ThresholdMcc& a, const ThresholdMcc& b) { return a.mcc < b.mcc; });
    const GridSearchResult search = grid_search_hysteresis(traces, tracks, step);

    const std::string tag = engine.file_tag();
    out.write("hysteresis_surface_" + tag + ".csv", surface_csv(search.surface));
    out.write("hysteresis_best_" + tag + ".json", best_pair_json(search));
    out.write("mcc_threshold_" + tag + ".csv", mcc_sweep_csv(sweep));

    engines.push_back({{"engine_id", engine.engine_id()},
                       {"mcc", plain_best->mcc},
                       {"threshold_best", plain_best->threshold},
                       {"mcc_hysteresis", search.best_mcc},
                       {"best_low", search.best.low},
                       {"best_high", search.best.high}});
  }
  ordered_json comparison;
  comparison["window_ms"] = w;
  comparison["step"] = step;
  comparison["engines"] = std::move(engines);
  out.write("hysteresis_comparison.json", comparison.dump(2) + "\n");
  return out.finish(std::move(warnings));
}

RunResult run_make_fixtures(const fs::path& output_dir, const DatasetOptions& options) {
  if (output_dir.empty()) config_error("--out is required");
  const auto fixtures = make_dataset(options);
  OutputSet out(output_dir);
  for (const Fixture& f : fixtures) {
    const auto wav = encode_wav(f.clip);
    out.write(f.clip.source_id() + ".wav", std::string(wav.begin(), wav.end()));
    out.write(f.clip.source_id() + ".labels.tsv", labels_tsv(f.labels));
  }
  return out.finish({});
}

}  // namespace vadbench::harness
