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

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace signaddr::detgeom {

/// Axis-aligned box in relative center format, matching the label files:
/// center (cx, cy) in [0,1], extent (w, h) in (0,1].
struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return cx - w / 2.0; }
  double top() const { return cy - h / 2.0; }
  double right() const { return cx + w / 2.0; }
  double bottom() const { return cy + h / 2.0; }
  double area() const { return w * h; }
};

/// Throws ValidationError when the box violates its invariants.
void validate_box(const BoundingBox& box);
bool box_is_valid(const BoundingBox& box);

struct Detection {
  BoundingBox box;
  int class_id = 0;
  double confidence = 1.0;
};

struct GroundTruthAnnotation {
  BoundingBox box;
  int class_id = 0;
  std::string image_id;
};

struct MatchResult {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  /// For each input detection (same order): matched ground-truth index, or
  /// nullopt for a false positive.
  std::vector<std::optional<int>> matched_gt;
};

struct PrCurvePoint {
  double recall = 0.0;
  double precision = 0.0;
};
using PrecisionRecallCurve = std::vector<PrCurvePoint>;

/// Area(a n b) / Area(a u b). Degenerate boxes are a domain error.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Greedy matching in descending confidence (ties keep input order). A
/// detection is a true positive iff its best-IoU unmatched ground truth of
/// the same class reaches the threshold; each ground truth is consumed once.
MatchResult match_detections(const std::vector<Detection>& preds,
                             const std::vector<GroundTruthAnnotation>& gts, double iou_threshold);

/// TP/(TP+FP) and TP/(TP+FN); zero denominators yield 0.
std::pair<double, double> precision_recall(const MatchResult& m);

double f1_score(double precision, double recall);

enum class ApInterpolation {
  kAllPoint,  // PASCAL VOC 2010+: precision at k = max precision at rank >= k
  kRaw,       // literal sum of delta-recall * raw precision
};

PrecisionRecallCurve precision_recall_curve(const std::vector<Detection>& preds,
                                            const std::vector<GroundTruthAnnotation>& gts,
                                            double iou_threshold);

double average_precision(const std::vector<Detection>& preds,
                         const std::vector<GroundTruthAnnotation>& gts, double iou_threshold,
                         ApInterpolation interp = ApInterpolation::kAllPoint);

/// Detection-head filter count: (5 + num_classes) * 3.
int head_filter_count(int num_classes);

}  // namespace signaddr::detgeom
