#include "vadbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vadbench/error.h"

namespace vadbench {
namespace {

void check_aligned(std::size_t scores, std::size_t labels) {
  if (scores != labels) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(scores) + " scores vs " +
                                                std::to_string(labels) + " labels");
  }
  if (scores == 0) throw Error(ErrorCode::kEmptyInput, "no windows to evaluate");
}

void check_scores(std::span<const double> scores) {
  for (double s : scores) {
    if (std::isnan(s)) throw Error(ErrorCode::kScoreOutOfRange, "NaN score");
  }
}

// Cumulative (tp, fp) after each block of equal scores, highest first.
struct SweepStep {
  double threshold;
  std::uint64_t tp;
  std::uint64_t fp;
};

std::vector<SweepStep> descending_sweep(std::span<const double> scores,
                                        const std::vector<bool>& labels) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<SweepStep> steps;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == t; ++i) {
      if (labels[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    steps.push_back({t, tp, fp});
  }
  return steps;
}

}  // namespace

ConfusionCounts confusion(const std::vector<bool>& decisions, const std::vector<bool>& labels) {
  if (decisions.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(decisions.size()) +
                                                " decisions vs " +
                                                std::to_string(labels.size()) + " labels");
  }
  if (decisions.empty()) throw Error(ErrorCode::kEmptyInput, "no decisions");
  ConfusionCounts c;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i]) {
      labels[i] ? ++c.tp : ++c.fp;
    } else {
      labels[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

double mcc(const ConfusionCounts& c) {
  if (c.total() == 0) throw Error(ErrorCode::kEmptyCounts, "MCC of an empty matrix");
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return std::clamp((tp * tn - fp * fn) / std::sqrt(denom), -1.0, 1.0);
}

std::vector<bool> binarize(std::span<const double> scores, double threshold) {
  std::vector<bool> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold;
  return out;
}

Curve roc_curve(std::span<const double> scores, const std::vector<bool>& labels) {
  check_aligned(scores.size(), labels.size());
  check_scores(scores);
  const auto positives = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), true));
  const std::uint64_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClassInput,
                positives == 0 ? "no speech windows" : "no non-speech windows");
  }
  const double p = static_cast<double>(positives);
  const double n = static_cast<double>(negatives);

  Curve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for (const SweepStep& step : descending_sweep(scores, labels)) {
    const CurvePoint prev = curve.points.back();
    const CurvePoint next{step.threshold, static_cast<double>(step.fp) / n,
                          static_cast<double>(step.tp) / p};
    curve.area += (next.x - prev.x) * (next.y + prev.y) / 2.0;
    curve.points.push_back(next);
  }
  curve.area = std::clamp(curve.area, 0.0, 1.0);
  return curve;
}

Curve pr_curve(std::span<const double> scores, const std::vector<bool>& labels) {
  check_aligned(scores.size(), labels.size());
  check_scores(scores);
  const auto positives = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), true));
  if (positives == 0) throw Error(ErrorCode::kNoPositives, "no speech windows");
  const double p = static_cast<double>(positives);

  Curve curve;
  double prev_recall = 0.0;
  for (const SweepStep& step : descending_sweep(scores, labels)) {
    const double recall = static_cast<double>(step.tp) / p;
    const double precision =
        static_cast<double>(step.tp) / static_cast<double>(step.tp + step.fp);
    curve.area += (recall - prev_recall) * precision;
    curve.points.push_back({step.threshold, recall, precision});
    prev_recall = recall;
  }
  curve.area = std::clamp(curve.area, 0.0, 1.0);
  return curve;
}

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw Error(ErrorCode::kInvalidStep, "step must lie in (0, 1]");
  }
  const double inverse = 1.0 / step;
  const auto intervals = static_cast<std::int64_t>(std::llround(inverse));
  if (std::abs(inverse - static_cast<double>(intervals)) > 1e-9 * inverse) {
    throw Error(ErrorCode::kInvalidStep, "step must divide 1 evenly");
  }
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  for (std::int64_t k = 0; k <= intervals; ++k) {
    grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(intervals);
  }
  return grid;
}

std::vector<ThresholdMcc> mcc_threshold_sweep(std::span<const double> scores,
                                              const std::vector<bool>& labels, double step) {
  const auto grid = threshold_grid(step);
  check_aligned(scores.size(), labels.size());
  check_scores(scores);

  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] ? pos : neg).push_back(scores[i]);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<ThresholdMcc> out;
  out.reserve(grid.size());
  for (double t : grid) {
    ConfusionCounts c;
    c.fn = static_cast<std::uint64_t>(std::lower_bound(pos.begin(), pos.end(), t) - pos.begin());
    c.tp = pos.size() - c.fn;
    c.tn = static_cast<std::uint64_t>(std::lower_bound(neg.begin(), neg.end(), t) - neg.begin());
    c.fp = neg.size() - c.tn;
    out.push_back({t, mcc(c)});
  }
  return out;
}

ClipScores pool_clips(std::vector<ClipScores> clips) {
  std::sort(clips.begin(), clips.end(),
            [](const ClipScores& a, const ClipScores& b) { return a.source_id < b.source_id; });
  ClipScores pooled;
  pooled.source_id = "pooled";
  for (const ClipScores& clip : clips) {
    check_aligned(clip.scores.size(), clip.labels.size());
    pooled.scores.insert(pooled.scores.end(), clip.scores.begin(), clip.scores.end());
    pooled.labels.insert(pooled.labels.end(), clip.labels.begin(), clip.labels.end());
  }
  return pooled;
}

PerFileReport per_file_report(std::vector<ClipScores> clips) {
  PerFileReport report;
  for (const ClipScores& clip : clips) {
    FileMetrics m;
    try {
      m.auc = roc_curve(clip.scores, clip.labels).area;
    } catch (const Error& e) {
      m.note = e.what();
    }
    try {
      m.ap = pr_curve(clip.scores, clip.labels).area;
    } catch (const Error& e) {
      if (m.note.empty()) m.note = e.what();
    }
    report.per_file[clip.source_id] = std::move(m);
  }
  const ClipScores pooled = pool_clips(std::move(clips));
  report.pooled_roc = roc_curve(pooled.scores, pooled.labels);
  report.pooled_pr = pr_curve(pooled.scores, pooled.labels);
  return report;
}

MetricReport build_report(std::string engine_id, std::uint32_t window_size_ms,
                          std::vector<ClipScores> clips, double mcc_step) {
  MetricReport report;
  report.engine_id = std::move(engine_id);
  report.window_size_ms = window_size_ms;

  const ClipScores pooled = pool_clips(clips);
  check_aligned(pooled.scores.size(), pooled.labels.size());
  report.window_count = pooled.scores.size();
  report.prevalence =
      static_cast<double>(std::count(pooled.labels.begin(), pooled.labels.end(), true)) /
      static_cast<double>(pooled.labels.size());

  auto files = per_file_report(std::move(clips));
  report.roc = std::move(files.pooled_roc);
  report.pr = std::move(files.pooled_pr);
  report.per_file = std::move(files.per_file);

  report.mcc_by_threshold = mcc_threshold_sweep(pooled.scores, pooled.labels, mcc_step);
  // First maximum, i.e. the lowest threshold among ties.
  const auto best = std::max_element(
      report.mcc_by_threshold.begin(), report.mcc_by_threshold.end(),
      [](const ThresholdMcc& a, const ThresholdMcc& b) { return a.mcc < b.mcc; });
  report.mcc_best = best->mcc;
  report.threshold_best = best->threshold;
  report.confusion_at_best =
      confusion(binarize(pooled.scores, report.threshold_best), pooled.labels);
  return report;
}

}  // namespace vadbench
