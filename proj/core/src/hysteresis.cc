#include "vadbench/hysteresis.h"

#include "csv.h"
#include "vadbench/error.h"

namespace vadbench {

HysteresisConfig HysteresisConfig::make(double low, double high) {
  if (!(0.0 <= low && low <= high && high <= 1.0)) {
    throw Error(ErrorCode::kInvalidThresholds,
                "need 0 <= low <= high <= 1, got low=" + csv::format_double(low) +
                    " high=" + csv::format_double(high));
  }
  return HysteresisConfig{low, high};
}

std::vector<bool> hysteresis_gate(std::span<const double> scores,
                                  const HysteresisConfig& config) {
  std::vector<bool> out(scores.size());
  bool on = false;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (on) {
      on = !(scores[i] < config.low);
    } else {
      on = scores[i] >= config.high;
    }
    out[i] = on;
  }
  return out;
}

GateDecisions apply_hysteresis(const PredictionTrace& trace, const HysteresisConfig& config) {
  const auto checked = HysteresisConfig::make(config.low, config.high);
  return GateDecisions{hysteresis_gate(trace.scores, checked), checked, trace.engine_id};
}

GridSearchResult grid_search_hysteresis(const std::vector<PredictionTrace>& traces,
                                        const std::vector<WindowLabelTrack>& labels,
                                        double step) {
  const auto grid = threshold_grid(step);
  if (traces.size() != labels.size()) {
    throw Error(ErrorCode::kAlignmentMismatch, std::to_string(traces.size()) + " traces vs " +
                                                   std::to_string(labels.size()) +
                                                   " label tracks");
  }
  if (traces.empty()) throw Error(ErrorCode::kAlignmentMismatch, "no traces");
  for (std::size_t c = 0; c < traces.size(); ++c) {
    if (traces[c].scores.size() != labels[c].labels.size() || traces[c].scores.empty()) {
      throw Error(ErrorCode::kAlignmentMismatch,
                  "trace '" + traces[c].source_id + "' has " +
                      std::to_string(traces[c].scores.size()) + " windows, labels have " +
                      std::to_string(labels[c].labels.size()));
    }
  }

  GridSearchResult result;
  result.surface.reserve(grid.size() * (grid.size() + 1) / 2);
  bool have_best = false;
  for (std::size_t li = 0; li < grid.size(); ++li) {
    for (std::size_t hi = li; hi < grid.size(); ++hi) {
      const HysteresisConfig config{grid[li], grid[hi]};
      ConfusionCounts pooled;
      for (std::size_t c = 0; c < traces.size(); ++c) {
        pooled += confusion(hysteresis_gate(traces[c].scores, config), labels[c].labels);
      }
      const double value = mcc(pooled);
      result.surface.push_back({config.low, config.high, value});

      const bool better =
          !have_best || value > result.best_mcc ||
          (value == result.best_mcc &&
           (config.high < result.best.high ||
            (config.high == result.best.high && config.low < result.best.low)));
      if (better) {
        result.best = config;
        result.best_mcc = value;
        have_best = true;
      }
    }
  }
  return result;
}

}  // namespace vadbench
