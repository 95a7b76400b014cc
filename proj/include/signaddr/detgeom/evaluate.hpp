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

#include <filesystem>
#include <string>
#include <vector>

#include "signaddr/detgeom/detgeom.hpp"

namespace signaddr::detgeom {

/// One image's predictions and ground truths, as pooled by the harness.
struct ImageEvalInput {
  std::string image_id;
  std::vector<Detection> preds;
  std::vector<GroundTruthAnnotation> gts;
};

struct ClassMetrics {
  int class_id = 0;
  double ap = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct DetectionEvalReport {
  std::string model;
  double iou_threshold = 0.5;
  std::vector<ClassMetrics> per_class;
};

/// Matches per image (detections never cross images), pools the ranked
/// detections per class, and computes AP/P/R/F1. Precision and recall are
/// reported at the all-detections operating point.
DetectionEvalReport evaluate_detections(const std::string& model_name,
                                        const std::vector<ImageEvalInput>& images,
                                        double iou_threshold,
                                        ApInterpolation interp = ApInterpolation::kAllPoint);

/// One JSON record per class per line:
/// {"model":..,"class":..,"AP":..,"P":..,"R":..,"F1":..,"iou_threshold":..}
void write_detection_report(const DetectionEvalReport& report, const std::filesystem::path& path);

/// Loads per-image ground-truth and prediction files (same stem, .txt) from
/// two directories.
std::vector<ImageEvalInput> load_eval_inputs(const std::filesystem::path& gt_dir,
                                             const std::filesystem::path& pred_dir);

}  // namespace signaddr::detgeom
