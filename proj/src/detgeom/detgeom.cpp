/* Copyright (c) 2026 The signaddr Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "signaddr/detgeom/detgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "signaddr/core/error.hpp"

namespace signaddr::detgeom {

bool box_is_valid(const BoundingBox& box) {
  if (!(box.cx >= 0.0 && box.cx <= 1.0 && box.cy >= 0.0 && box.cy <= 1.0)) return false;
  if (!(box.w > 0.0 && box.w <= 1.0 && box.h > 0.0 && box.h <= 1.0)) return false;
  return (box.right() - box.left()) * (box.bottom() - box.top()) > 0.0;
}

void validate_box(const BoundingBox& box) {
  if (!box_is_valid(box)) {
    throw ValidationError("invalid bounding box: cx=" + std::to_string(box.cx) +
                          " cy=" + std::to_string(box.cy) + " w=" + std::to_string(box.w) +
                          " h=" + std::to_string(box.h));
  }
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  if (a.area() <= 0.0 || b.area() <= 0.0) throw DomainError("iou over a degenerate box");
  const double ix = std::max(0.0, std::min(a.right(), b.right()) - std::max(a.left(), b.left()));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top()));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

MatchResult match_detections(const std::vector<Detection>& preds,
                             const std::vector<GroundTruthAnnotation>& gts, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw DomainError("iou_threshold must lie in (0,1)");
  }
  // Stable sort keeps input order on confidence ties (documented behavior).
  std::vector<int> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return preds[a].confidence > preds[b].confidence; });

  MatchResult result;
  result.matched_gt.assign(preds.size(), std::nullopt);
  std::vector<bool> consumed(gts.size(), false);
  for (int pi : order) {
    const Detection& det = preds[static_cast<std::size_t>(pi)];
    double best = -1.0;
    int best_gt = -1;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      if (consumed[gi] || gts[gi].class_id != det.class_id) continue;
      const double overlap = iou(det.box, gts[gi].box);
      if (overlap > best) {
        best = overlap;
        best_gt = static_cast<int>(gi);
      }
    }
    if (best_gt >= 0 && best >= iou_threshold) {
      consumed[static_cast<std::size_t>(best_gt)] = true;
      result.matched_gt[static_cast<std::size_t>(pi)] = best_gt;
      ++result.true_positives;
    } else {
      ++result.false_positives;
    }
  }
  result.false_negatives = static_cast<int>(gts.size()) - result.true_positives;
  return result;
}

std::pair<double, double> precision_recall(const MatchResult& m) {
  if (m.true_positives < 0 || m.false_positives < 0 || m.false_negatives < 0) {
    throw DomainError("negative match counts");
  }
  const int denom_p = m.true_positives + m.false_positives;
  const int denom_r = m.true_positives + m.false_negatives;
  const double precision = denom_p == 0 ? 0.0 : static_cast<double>(m.true_positives) / denom_p;
  const double recall = denom_r == 0 ? 0.0 : static_cast<double>(m.true_positives) / denom_r;
  return {precision, recall};
}

double f1_score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

PrecisionRecallCurve precision_recall_curve(const std::vector<Detection>& preds,
                                            const std::vector<GroundTruthAnnotation>& gts,
                                            double iou_threshold) {
  const MatchResult matches = match_detections(preds, gts, iou_threshold);
  std::vector<int> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return preds[a].confidence > preds[b].confidence; });

  PrecisionRecallCurve curve;
  curve.reserve(preds.size());
  const double total_gt = static_cast<double>(gts.size());
  int tp = 0;
  int seen = 0;
  for (int pi : order) {
    ++seen;
    if (matches.matched_gt[static_cast<std::size_t>(pi)].has_value()) ++tp;
    curve.push_back({static_cast<double>(tp) / total_gt, static_cast<double>(tp) / seen});
  }
  return curve;
}

double average_precision(const std::vector<Detection>& preds,
                         const std::vector<GroundTruthAnnotation>& gts, double iou_threshold,
                         ApInterpolation interp) {
  if (gts.empty()) throw DomainError("average precision undefined without ground truths");
  if (preds.empty()) return 0.0;
  PrecisionRecallCurve curve = precision_recall_curve(preds, gts, iou_threshold);
  if (interp == ApInterpolation::kAllPoint) {
    double running = 0.0;
    for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
      running = std::max(running, it->precision);
      it->precision = running;
    }
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const PrCurvePoint& pt : curve) {
    ap += (pt.recall - prev_recall) * pt.precision;
    prev_recall = pt.recall;
  }
  return ap;
}

int head_filter_count(int num_classes) {
  if (num_classes < 1) throw DomainError("head_filter_count requires at least one class");
  return (5 + num_classes) * 3;
}

}  // namespace signaddr::detgeom
