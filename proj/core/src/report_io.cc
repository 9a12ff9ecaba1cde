#include "vadbench/report_io.h"

#include <json.hpp>

#include "csv.h"

namespace vadbench {
namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_json(const MetricReport& report) {
  ordered_json j;
  j["engine_id"] = report.engine_id;
  j["window_ms"] = report.window_size_ms;
  j["auc"] = report.roc.area;
  j["ap"] = report.pr.area;
  j["mcc_best"] = report.mcc_best;
  j["threshold_best"] = report.threshold_best;
  j["window_count"] = report.window_count;
  j["prevalence"] = report.prevalence;
  j["confusion_at_best"] = {{"tp", report.confusion_at_best.tp},
                            {"fp", report.confusion_at_best.fp},
                            {"tn", report.confusion_at_best.tn},
                            {"fn", report.confusion_at_best.fn}};
  ordered_json sweep = ordered_json::array();
  for (const ThresholdMcc& t : report.mcc_by_threshold) {
    sweep.push_back({{"threshold", t.threshold}, {"mcc", t.mcc}});
  }
  j["mcc_by_threshold"] = std::move(sweep);

  ordered_json files = ordered_json::object();
  for (const auto& [id, m] : report.per_file) {
    ordered_json f;
    f["auc"] = m.auc ? ordered_json(*m.auc) : ordered_json(nullptr);
    f["ap"] = m.ap ? ordered_json(*m.ap) : ordered_json(nullptr);
    if (!m.note.empty()) f["note"] = m.note;
    files[id] = std::move(f);
  }
  j["per_file"] = std::move(files);
  return dump(j);
}

std::string curve_csv(const Curve& curve) {
  std::string out = "threshold,x,y\n";
  for (const CurvePoint& p : curve.points) {
    out += csv::format_double(p.threshold) + ',' + csv::format_double(p.x) + ',' +
           csv::format_double(p.y) + '\n';
  }
  return out;
}

std::string mcc_sweep_csv(const std::vector<ThresholdMcc>& sweep) {
  std::string out = "threshold,mcc\n";
  for (const ThresholdMcc& t : sweep) {
    out += csv::format_double(t.threshold) + ',' + csv::format_double(t.mcc) + '\n';
  }
  return out;
}

std::string surface_csv(const std::vector<SurfacePoint>& surface) {
  std::string out = "low,high,mcc\n";
  for (const SurfacePoint& p : surface) {
    out += csv::format_double(p.low) + ',' + csv::format_double(p.high) + ',' +
           csv::format_double(p.mcc) + '\n';
  }
  return out;
}

std::string best_pair_json(const GridSearchResult& result) {
  ordered_json j;
  j["best_low"] = result.best.low;
  j["best_high"] = result.best.high;
  j["best_mcc"] = result.best_mcc;
  return dump(j);
}

}  // namespace vadbench
