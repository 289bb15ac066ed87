#include "litterscope/evalmetrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

std::vector<std::size_t> claim_order(std::span<const EvalInstance> detections) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (detections[a].confidence != detections[b].confidence) {
      return detections[a].confidence > detections[b].confidence;
    }
    return detections[a].id < detections[b].id;
  });
  return order;
}

template <typename Pred>
std::vector<EvalInstance> filtered(std::span<const EvalInstance> items, Pred pred) {
  std::vector<EvalInstance> out;
  for (const auto& item : items) {
    if (pred(item)) out.push_back(item);
  }
  return out;
}

}  // namespace

PixelMask::PixelMask(std::vector<PixelSpan> spans) : spans_(std::move(spans)) {
  std::sort(spans_.begin(), spans_.end(), [](const PixelSpan& a, const PixelSpan& b) {
    return a.y != b.y ? a.y < b.y : a.x_begin < b.x_begin;
  });
  for (std::size_t i = 1; i < spans_.size(); ++i) {
    const auto& prev = spans_[i - 1];
    if (prev.y == spans_[i].y && spans_[i].x_begin < prev.x_end) {
      throw Error("pixel spans overlap");
    }
  }
  bool first = true;
  for (const auto& s : spans_) {
    if (s.x_end <= s.x_begin) throw Error("empty pixel span");
    area_ += s.x_end - s.x_begin;
    if (first) {
      bbox_ = {s.x_begin, s.y, s.x_end, s.y + 1};
      first = false;
    } else {
      bbox_.x0 = std::min(bbox_.x0, s.x_begin);
      bbox_.x1 = std::max(bbox_.x1, s.x_end);
      bbox_.y1 = std::max(bbox_.y1, s.y + 1);
    }
  }
}

PixelMask PixelMask::from_polygon(std::span<const Point> polygon) {
  return PixelMask(rasterize_spans(polygon));
}

std::int64_t PixelMask::intersection_area(const PixelMask& other) const {
  if (empty() || other.empty() || !bbox_.intersects(other.bbox_)) return 0;
  std::int64_t total = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = spans_;
  const auto& b = other.spans_;
  while (i < a.size() && j < b.size()) {
    if (a[i].y < b[j].y) {
      ++i;
    } else if (b[j].y < a[i].y) {
      ++j;
    } else {
      const auto lo = std::max(a[i].x_begin, b[j].x_begin);
      const auto hi = std::min(a[i].x_end, b[j].x_end);
      if (hi > lo) total += hi - lo;
      if (a[i].x_end < b[j].x_end) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  return total;
}

double mask_iou(const PixelMask& a, const PixelMask& b) {
  if (a.empty() || b.empty()) throw Error("IoU of an empty mask");
  const auto inter = a.intersection_area(b);
  const auto uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<EvalInstance> to_eval_instances(std::span<const InstanceRecord> records) {
  std::vector<EvalInstance> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.id, r.gcode, r.confidence.value_or(1.0),
                   PixelMask::from_polygon(r.polygon)});
  }
  return out;
}

MatchSet match(std::span<const EvalInstance> detections,
               std::span<const EvalInstance> ground_truth, double iou_threshold,
               bool same_category) {
  std::vector<std::size_t> gt_order(ground_truth.size());
  std::iota(gt_order.begin(), gt_order.end(), std::size_t{0});
  std::sort(gt_order.begin(), gt_order.end(), [&](std::size_t a, std::size_t b) {
    return ground_truth[a].id < ground_truth[b].id;
  });
  std::vector<bool> taken(ground_truth.size(), false);

  MatchSet result;
  for (const std::size_t d : claim_order(detections)) {
    const auto& det = detections[d];
    std::optional<std::size_t> best;
    double best_iou = -1.0;
    for (const std::size_t g : gt_order) {
      if (taken[g]) continue;
      const auto& gt = ground_truth[g];
      if (same_category && !(gt.gcode == det.gcode)) continue;
      if (det.mask.empty() || gt.mask.empty()) continue;
      if (!det.mask.bbox().intersects(gt.mask.bbox())) continue;
      const double iou = mask_iou(det.mask, gt.mask);
      if (iou >= iou_threshold && iou > best_iou) {
        best = g;
        best_iou = iou;
      }
    }
    if (best) {
      taken[*best] = true;
      result.pairs.push_back({det.id, ground_truth[*best].id, best_iou});
    } else {
      result.unmatched_detections.push_back(det.id);
    }
  }
  for (const std::size_t g : gt_order) {
    if (!taken[g]) result.unmatched_gts.push_back(ground_truth[g].id);
  }
  return result;
}

PrecisionRecall precision_recall(const MatchSet& matches) {
  PrecisionRecall pr;
  const auto tp = static_cast<double>(matches.tp());
  const auto predicted = matches.tp() + matches.fp();
  const auto actual = matches.tp() + matches.fn();
  if (predicted == 0) {
    pr.precision_undefined = true;
  } else {
    pr.precision = tp / static_cast<double>(predicted);
  }
  if (actual == 0) {
    pr.recall_undefined = true;
  } else {
    pr.recall = tp / static_cast<double>(actual);
  }
  return pr;
}

APResult average_precision(std::span<const EvalInstance> detections,
                           std::span<const EvalInstance> ground_truth,
                           const GCode& category, double iou_threshold) {
  const auto in_category = [&](const EvalInstance& e) { return e.gcode == category; };
  const auto dets = filtered(detections, in_category);
  const auto gts = filtered(ground_truth, in_category);

  APResult result;
  result.gcode = category;
  result.gt_count = static_cast<std::int64_t>(gts.size());
  const auto matches = match(dets, gts, iou_threshold, true);
  result.tp = matches.tp();
  result.fp = matches.fp();
  result.fn = matches.fn();
  if (gts.empty()) return result;

  std::set<std::int64_t> matched;
  for (const auto& p : matches.pairs) matched.insert(p.detection_id);

  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::vector<std::int64_t> tp_at;  // cumulative TP per curve point
  for (const std::size_t d : claim_order(dets)) {
    if (matched.count(dets[d].id)) {
      ++tp;
    } else {
      ++fp;
    }
    tp_at.push_back(tp);
    result.curve.push_back({static_cast<double>(tp) / static_cast<double>(gts.size()),
                            static_cast<double>(tp) / static_cast<double>(tp + fp),
                            dets[d].confidence});
  }

  // Interpolated precision at recall r = max precision over points with
  // recall >= r; evaluated at r = 0, 0.01, ..., 1.
  std::vector<double> envelope(result.curve.size());
  double running = 0.0;
  for (std::size_t i = result.curve.size(); i-- > 0;) {
    running = std::max(running, result.curve[i].precision);
    envelope[i] = running;
  }
  const auto gt_count = result.gt_count;
  double sum = 0.0;
  std::size_t cursor = 0;
  for (std::int64_t k = 0; k <= 100; ++k) {
    // recall >= k / 100  <=>  100 * tp >= k * gt_count
    while (cursor < tp_at.size() && 100 * tp_at[cursor] < k * gt_count) ++cursor;
    if (cursor == tp_at.size()) break;
    sum += envelope[cursor];
  }
  result.ap = sum / 101.0;
  return result;
}

double map50(std::span<const APResult> per_category) {
  double sum = 0.0;
  int n = 0;
  for (const auto& ap : per_category) {
    if (ap.gt_count < 1) continue;
    sum += ap.ap;
    ++n;
  }
  if (n == 0) throw Error("no category has ground truth");
  return sum / n;
}

EvalReport evaluate(std::span<const EvalInstance> detections,
                    std::span<const EvalInstance> ground_truth, double iou_threshold,
                    double confidence_cut) {
  if (ground_truth.empty()) throw Error("evaluation needs ground truth");
  EvalReport report;
  report.iou_threshold = iou_threshold;
  report.confidence_cut = confidence_cut;

  std::set<GCode> categories;
  for (const auto& e : ground_truth) categories.insert(e.gcode);
  for (const auto& e : detections) categories.insert(e.gcode);

  const auto kept = filtered(detections, [&](const EvalInstance& e) {
    return e.confidence >= confidence_cut;
  });
  for (const auto& category : categories) {
    auto ap = average_precision(detections, ground_truth, category, iou_threshold);
    // Counts follow the confidence cut; AP always uses every detection.
    const auto cut = average_precision(kept, ground_truth, category, iou_threshold);
    ap.tp = cut.tp;
    ap.fp = cut.fp;
    ap.fn = cut.fn;
    report.per_category.push_back(std::move(ap));
  }
  report.map = map50(report.per_category);
  report.matches = match(kept, ground_truth, iou_threshold, true);
  report.at_cut = precision_recall(report.matches);

  // Detections above a cut are matched exactly as in the full greedy pass,
  // so one pass over all detections yields every operating point.
  const auto full = match(detections, ground_truth, iou_threshold, true);
  std::set<std::int64_t> hits;
  for (const auto& p : full.pairs) hits.insert(p.detection_id);
  const auto order = claim_order(detections);
  const auto total_gt = static_cast<double>(ground_truth.size());
  std::int64_t tp = 0;
  std::int64_t seen = 0;
  bool have_point = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& det = detections[order[i]];
    ++seen;
    if (hits.count(det.id)) ++tp;
    const bool last_at_level =
        i + 1 == order.size() || detections[order[i + 1]].confidence != det.confidence;
    if (!last_at_level) continue;
    const double p = static_cast<double>(tp) / static_cast<double>(seen);
    const double r = static_cast<double>(tp) / total_gt;
    const double f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    if (!have_point || f1 > report.best_f1.f1) {
      report.best_f1 = {det.confidence, p, r, f1};
      have_point = true;
    }
  }
  return report;
}

}  // namespace litterscope
