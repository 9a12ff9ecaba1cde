// vadbench: window-size vs accuracy harness for voice activity detectors.
//
//   vadbench make-fixtures    --out DIR [--seed N] ...
//   vadbench evaluate         --dataset DIR --out DIR [--engines rms,external:silero]
//   vadbench sweep-windows    --dataset DIR --out DIR [--windows-ms 10,100,1000]
//   vadbench sweep-hysteresis --dataset DIR --out DIR [--hysteresis-step 0.05]
//
// Exit codes: 0 success, 1 config error, 2 data error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "vadbench/error.h"
#include "vadbench/framing.h"
#include "vadbench/harness.h"

namespace {

using vadbench::harness::RunConfig;
using vadbench::harness::RunResult;

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct CommonFlags {
  std::string dataset;
  std::string engines = "rms";
  std::string windows;
  std::optional<double> hysteresis_step;
  std::optional<std::uint32_t> rms_native_ms;
  double mcc_step = 0.05;
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--dataset", f.dataset, "Directory of <name>.wav + <name>.labels.tsv pairs")
      ->required();
  cmd->add_option("--engines", f.engines, "Comma list: rms, external:<id>")
      ->capture_default_str();
  cmd->add_option("--windows-ms", f.windows, "Comma list of window sizes in ms");
  cmd->add_option("--hysteresis-step", f.hysteresis_step, "Grid step for hysteresis thresholds");
  cmd->add_option("--rms-native-ms", f.rms_native_ms,
                  "RMS subwindow size in ms (default min(50, window))");
  cmd->add_option("--mcc-step", f.mcc_step, "Threshold step for the MCC sweep")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory")->required();
  cmd->add_option("--seed", f.seed, "Accepted for symmetry; evaluation draws no random numbers");
}

RunConfig to_config(const CommonFlags& f, const std::vector<std::uint32_t>& default_windows) {
  RunConfig config;
  config.dataset_dir = f.dataset;
  config.engines = vadbench::harness::parse_engine_list(f.engines);
  config.window_sizes_ms =
      f.windows.empty() ? default_windows : vadbench::harness::parse_window_list(f.windows);
  config.hysteresis_step = f.hysteresis_step;
  config.rms_native_ms = f.rms_native_ms;
  config.mcc_step = f.mcc_step;
  config.output_dir = f.out;
  return config;
}

void report(const RunResult& result, const std::string& out_dir) {
  for (const auto& w : result.warnings) {
    std::cerr << "warning: [" << w.source_id << "] " << w.kind << ": " << w.message << "\n";
  }
  std::cout << "wrote " << result.files.size() << " files to " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voice activity detector window-size evaluation harness"};
  app.set_config("--config", "", "Optional TOML/INI config file; flags override it");
  app.require_subcommand(1);

  CommonFlags eval_flags;
  auto* evaluate = app.add_subcommand("evaluate", "ROC/PR/MCC reports per engine and window");
  add_common(evaluate, eval_flags);

  CommonFlags sweep_flags;
  auto* sweep_windows =
      app.add_subcommand("sweep-windows", "AUC and AP across window sizes, pooled and per file");
  add_common(sweep_windows, sweep_flags);

  CommonFlags hyst_flags;
  auto* sweep_hysteresis = app.add_subcommand(
      "sweep-hysteresis", "Grid search of hysteresis thresholds under MCC at one window size");
  add_common(sweep_hysteresis, hyst_flags);

  vadbench::DatasetOptions fixture_options;
  std::string fixture_out;
  std::string floors = "-80,-70,-60,-50";
  std::string waveform = "noise";
  auto* make_fixtures =
      app.add_subcommand("make-fixtures", "Write a synthetic dataset with known labels");
  make_fixtures->add_option("--out", fixture_out, "Output directory")->required();
  make_fixtures->add_option("--seed", fixture_options.seed, "Generator seed")
      ->capture_default_str();
  make_fixtures->add_option("--clips", fixture_options.clip_count, "Number of clips")
      ->capture_default_str();
  make_fixtures->add_option("--clip-seconds", fixture_options.clip_seconds, "Clip length")
      ->capture_default_str();
  make_fixtures->add_option("--burst-ms", fixture_options.burst_ms, "Speech burst length")
      ->capture_default_str();
  make_fixtures->add_option("--burst-dbfs", fixture_options.burst_dbfs, "Speech burst level")
      ->capture_default_str();
  make_fixtures->add_option("--floor-dbfs", floors, "Comma list of noise floors, cycled")
      ->capture_default_str();
  make_fixtures->add_option("--prevalence", fixture_options.target_prevalence,
                            "Target fraction of speech time")
      ->capture_default_str();
  make_fixtures->add_option("--waveform", waveform, "Burst waveform: noise or tone")
      ->check(CLI::IsMember({"noise", "tone"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*evaluate) {
      report(vadbench::harness::run_evaluate(to_config(eval_flags, {100})), eval_flags.out);
    } else if (*sweep_windows) {
      report(vadbench::harness::run_sweep_windows(
                 to_config(sweep_flags, vadbench::canonical_window_sizes_ms())),
             sweep_flags.out);
    } else if (*sweep_hysteresis) {
      report(vadbench::harness::run_sweep_hysteresis(to_config(hyst_flags, {50})),
             hyst_flags.out);
    } else if (*make_fixtures) {
      fixture_options.floors_dbfs.clear();
      for (const auto& field : CLI::detail::split(floors, ',')) {
        double level = 0.0;
        if (!CLI::detail::lexical_cast(field, level)) {
          throw vadbench::Error(vadbench::ErrorCode::kConfigError,
                                "bad --floor-dbfs entry '" + field + "'");
        }
        fixture_options.floors_dbfs.push_back(level);
      }
      fixture_options.waveform =
          waveform == "tone" ? vadbench::Waveform::kTone : vadbench::Waveform::kWhiteNoise;
      report(vadbench::harness::run_make_fixtures(fixture_out, fixture_options), fixture_out);
    }
  } catch (const vadbench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vadbench::is_config_error(e.code()) ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
