#pragma once

#include <string>
#include <vector>

#include "vadbench/hysteresis.h"
#include "vadbench/metrics.h"

namespace vadbench {

// JSON body with engine_id, window_ms, auc, ap, mcc_best, threshold_best,
// the pooled confusion at the best threshold, the MCC sweep and per_file.
std::string report_json(const MetricReport& report);

// `threshold,x,y` rows; the ROC sentinel threshold prints as "inf".
std::string curve_csv(const Curve& curve);

// `threshold,mcc` rows.
std::string mcc_sweep_csv(const std::vector<ThresholdMcc>& sweep);

// `low,high,mcc` rows.
std::string surface_csv(const std::vector<SurfacePoint>& surface);

// {best_low, best_high, best_mcc}
std::string best_pair_json(const GridSearchResult& result);

}  // namespace vadbench
