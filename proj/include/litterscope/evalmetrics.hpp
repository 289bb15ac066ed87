#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "litterscope/geometry.hpp"
#include "litterscope/ingest.hpp"

namespace litterscope {

/// Rasterized instance mask stored as sorted row spans.
class PixelMask {
 public:
  PixelMask() = default;
  explicit PixelMask(std::vector<PixelSpan> spans);
  static PixelMask from_polygon(std::span<const Point> polygon);

  std::int64_t area() const { return area_; }
  bool empty() const { return area_ == 0; }
  const PixelBox& bbox() const { return bbox_; }
  std::span<const PixelSpan> spans() const { return spans_; }

  std::int64_t intersection_area(const PixelMask& other) const;

 private:
  std::vector<PixelSpan> spans_;
  std::int64_t area_ = 0;
  PixelBox bbox_;
};

/// |a & b| / |a | b|. Throws Error when either mask is empty.
double mask_iou(const PixelMask& a, const PixelMask& b);

struct EvalInstance {
  std::int64_t id = 0;
  GCode gcode{"G0"};
  double confidence = 1.0;  // ignored for ground truth
  PixelMask mask;
};

/// Rasterizes records; a missing confidence becomes 1.0.
std::vector<EvalInstance> to_eval_instances(std::span<const InstanceRecord> records);

struct MatchPair {
  std::int64_t detection_id;
  std::int64_t gt_id;
  double iou;
};

struct MatchSet {
  std::vector<MatchPair> pairs;
  std::vector<std::int64_t> unmatched_detections;  // false positives
  std::vector<std::int64_t> unmatched_gts;         // false negatives

  std::int64_t tp() const { return static_cast<std::int64_t>(pairs.size()); }
  std::int64_t fp() const {
    return static_cast<std::int64_t>(unmatched_detections.size());
  }
  std::int64_t fn() const { return static_cast<std::int64_t>(unmatched_gts.size()); }
};

/// Greedy matching: detections by descending confidence (ties by ascending
/// id) each claim the unmatched ground truth of highest IoU >= threshold
/// (ties by ascending gt id). `pairs` is in claim order.
MatchSet match(std::span<const EvalInstance> detections,
               std::span<const EvalInstance> ground_truth,
               double iou_threshold = 0.5, bool same_category = true);

/// Zero denominators yield 0 and raise the matching flag.
struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
};

PrecisionRecall precision_recall(const MatchSet& matches);

struct PRPoint {
  double recall;
  double precision;
  double confidence;
};

struct APResult {
  GCode gcode{"G0"};
  double ap = 0.0;
  std::int64_t gt_count = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::vector<PRPoint> curve;  // one point per detection, descending confidence
};

/// 101-point interpolated AP for the detections and ground truth of
/// `category` (other categories in the inputs are ignored).
APResult average_precision(std::span<const EvalInstance> detections,
                           std::span<const EvalInstance> ground_truth,
                           const GCode& category, double iou_threshold = 0.5);

/// Unweighted mean AP over categories with at least one ground truth.
/// Throws Error when no category has ground truth.
double map50(std::span<const APResult> per_category);

struct OperatingPoint {
  double confidence = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<APResult> per_category;  // ascending gcode
  double map = 0.0;
  double iou_threshold = 0.5;
  double confidence_cut = 0.0;
  MatchSet matches;          // detections with confidence >= cut
  PrecisionRecall at_cut;
  OperatingPoint best_f1;    // max-F1 point over all confidence cuts
};

/// Throws Error when there is no ground truth at all.
EvalReport evaluate(std::span<const EvalInstance> detections,
                    std::span<const EvalInstance> ground_truth,
                    double iou_threshold = 0.5, double confidence_cut = 0.0);

}  // namespace litterscope
