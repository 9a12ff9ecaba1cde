#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vadbench {

// Positive class is speech.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

// ROC: x = FPR, y = TPR. PR: x = recall, y = precision.
struct CurvePoint {
  double threshold = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Curve {
  std::vector<CurvePoint> points;
  double area = 0.0;  // ROC AUC or average precision
};

struct ThresholdMcc {
  double threshold = 0.0;
  double mcc = 0.0;
};

ConfusionCounts confusion(const std::vector<bool>& decisions, const std::vector<bool>& labels);

// Matthews correlation coefficient. Any zero factor in the denominator
// yields 0.0. Throws kEmptyCounts on an all-zero matrix.
double mcc(const ConfusionCounts& c);

// Binarizes with score >= threshold.
std::vector<bool> binarize(std::span<const double> scores, double threshold);

// The threshold sweep runs over the distinct scores (descending) plus a
// leading +inf sentinel at (0, 0). Ties are never split: a block of equal
// scores moves the curve in one step. AUC is the trapezoidal area.
// Throws kSingleClassInput unless both classes are present.
Curve roc_curve(std::span<const double> scores, const std::vector<bool>& labels);

// One point per distinct score, recall ascending; the last point sits at
// recall 1 with precision equal to prevalence. AP is the step-wise sum
// sum_k (R_k - R_{k-1}) P_k with R_0 = 0. Throws kNoPositives.
Curve pr_curve(std::span<const double> scores, const std::vector<bool>& labels);

// {0, 1/K, ..., 1} with K = 1/step; step must lie in (0, 1] and divide 1.
std::vector<double> threshold_grid(double step);

std::vector<ThresholdMcc> mcc_threshold_sweep(std::span<const double> scores,
                                              const std::vector<bool>& labels, double step);

// Scores and window labels for one clip at one window size.
struct ClipScores {
  std::string source_id;
  std::vector<double> scores;
  std::vector<bool> labels;
};

struct FileMetrics {
  std::optional<double> auc;
  std::optional<double> ap;
  std::string note;  // why a value is absent
};

struct PerFileReport {
  std::map<std::string, FileMetrics> per_file;
  Curve pooled_roc;
  Curve pooled_pr;
};

// Per-clip ROC/PR plus pooled curves over all clips concatenated in
// source_id order. Per-clip failures are recorded, pooled ones throw.
PerFileReport per_file_report(std::vector<ClipScores> clips);

struct MetricReport {
  std::string engine_id;
  std::uint32_t window_size_ms = 0;
  std::size_t window_count = 0;
  double prevalence = 0.0;
  Curve roc;
  Curve pr;
  std::vector<ThresholdMcc> mcc_by_threshold;
  double mcc_best = 0.0;
  double threshold_best = 0.0;
  ConfusionCounts confusion_at_best;
  std::map<std::string, FileMetrics> per_file;
};

MetricReport build_report(std::string engine_id, std::uint32_t window_size_ms,
                          std::vector<ClipScores> clips, double mcc_step);

// Concatenates clips in source_id order.
ClipScores pool_clips(std::vector<ClipScores> clips);

}  // namespace vadbench
