#pragma once

#include <span>
#include <string>
#include <vector>

#include "vadbench/engines.h"
#include "vadbench/ground_truth.h"
#include "vadbench/metrics.h"

namespace vadbench {

// Turn on at score >= high, turn off at score < low.
struct HysteresisConfig {
  double low = 0.5;
  double high = 0.5;

  // Throws kInvalidThresholds unless 0 <= low <= high <= 1.
  static HysteresisConfig make(double low, double high);
  bool operator==(const HysteresisConfig&) const = default;
};

struct GateDecisions {
  std::vector<bool> decisions;
  HysteresisConfig config;
  std::string engine_id;
};

// Starts OFF; decision i is the state after consuming score i. With
// low == high this is exactly score >= threshold.
std::vector<bool> hysteresis_gate(std::span<const double> scores, const HysteresisConfig& config);

GateDecisions apply_hysteresis(const PredictionTrace& trace, const HysteresisConfig& config);

struct SurfacePoint {
  double low = 0.0;
  double high = 0.0;
  double mcc = 0.0;
};

struct GridSearchResult {
  HysteresisConfig best;
  double best_mcc = 0.0;
  std::vector<SurfacePoint> surface;  // low-major, then high, both ascending
};

// Exhaustive search over low <= high on threshold_grid(step). The gate
// runs per clip; confusion counts are pooled across clips. Ties go to the
// smallest (high, low).
GridSearchResult grid_search_hysteresis(const std::vector<PredictionTrace>& traces,
                                        const std::vector<WindowLabelTrack>& labels,
                                        double step);

}  // namespace vadbench
