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

#include "signaddr/detgeom/evaluate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/detgeom/yolo_io.hpp"

namespace signaddr::detgeom {

DetectionEvalReport evaluate_detections(const std::string& model_name,
                                        const std::vector<ImageEvalInput>& images,
                                        double iou_threshold, ApInterpolation interp) {
  std::set<int> class_ids;
  for (const ImageEvalInput& img : images) {
    for (const auto& g : img.gts) class_ids.insert(g.class_id);
    for (const auto& p : img.preds) class_ids.insert(p.class_id);
  }

  struct RankedDet {
    double confidence;
    bool matched;
  };

  DetectionEvalReport report;
  report.model = model_name;
  report.iou_threshold = iou_threshold;
  for (int cls : class_ids) {
    std::vector<RankedDet> pooled;
    int total_gt = 0;
    for (const ImageEvalInput& img : images) {
      const MatchResult m = match_detections(img.preds, img.gts, iou_threshold);
      for (std::size_t i = 0; i < img.preds.size(); ++i) {
        if (img.preds[i].class_id != cls) continue;
        pooled.push_back({img.preds[i].confidence, m.matched_gt[i].has_value()});
      }
      for (const auto& g : img.gts) {
        if (g.class_id == cls) ++total_gt;
      }
    }
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const RankedDet& a, const RankedDet& b) { return a.confidence > b.confidence; });

    ClassMetrics metrics;
    metrics.class_id = cls;
    if (total_gt == 0) {
      // No ground truths of this class: AP is undefined, report zeros.
      metrics.precision = 0.0;
      report.per_class.push_back(metrics);
      continue;
    }
    std::vector<double> precisions, recalls;
    int tp = 0;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      if (pooled[i].matched) ++tp;
      precisions.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
      recalls.push_back(static_cast<double>(tp) / total_gt);
    }
    if (interp == ApInterpolation::kAllPoint) {
      double running = 0.0;
      for (auto it = precisions.rbegin(); it != precisions.rend(); ++it) {
        running = std::max(running, *it);
        *it = running;
      }
    }
    double ap = 0.0, prev_recall = 0.0;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      ap += (recalls[i] - prev_recall) * precisions[i];
      prev_recall = recalls[i];
    }
    metrics.ap = ap;
    const int total_pred = static_cast<int>(pooled.size());
    metrics.precision = total_pred == 0 ? 0.0 : static_cast<double>(tp) / total_pred;
    metrics.recall = static_cast<double>(tp) / total_gt;
    metrics.f1 = f1_score(metrics.precision, metrics.recall);
    report.per_class.push_back(metrics);
  }
  return report;
}

void write_detection_report(const DetectionEvalReport& report, const std::filesystem::path& path) {
  std::string out;
  for (const ClassMetrics& m : report.per_class) {
    nlohmann::json record;
    record["model"] = report.model;
    record["class"] = m.class_id;
    record["AP"] = m.ap;
    record["P"] = m.precision;
    record["R"] = m.recall;
    record["F1"] = m.f1;
    record["iou_threshold"] = report.iou_threshold;
    out += record.dump();
    out += '\n';
  }
  core::write_text_file(path, out);
}

std::vector<ImageEvalInput> load_eval_inputs(const std::filesystem::path& gt_dir,
                                             const std::filesystem::path& pred_dir) {
  if (!std::filesystem::is_directory(gt_dir)) {
    throw ValidationError("ground-truth directory missing: " + gt_dir.string());
  }
  if (!std::filesystem::is_directory(pred_dir)) {
    throw ValidationError("prediction directory missing: " + pred_dir.string());
  }
  std::map<std::string, ImageEvalInput> by_id;
  for (const auto& entry : std::filesystem::directory_iterator(gt_dir)) {
    if (entry.path().extension() != ".txt") continue;
    const std::string id = entry.path().stem().string();
    by_id[id].image_id = id;
    by_id[id].gts = read_yolo_labels(entry.path());
  }
  for (const auto& entry : std::filesystem::directory_iterator(pred_dir)) {
    if (entry.path().extension() != ".txt") continue;
    const std::string id = entry.path().stem().string();
    by_id[id].image_id = id;
    by_id[id].preds = read_yolo_predictions(entry.path());
  }
  std::vector<ImageEvalInput> out;
  out.reserve(by_id.size());
  for (auto& [id, input] : by_id) out.push_back(std::move(input));
  return out;
}

}  // namespace signaddr::detgeom
