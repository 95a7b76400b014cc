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

#include "signaddr/detgeom/adapter.hpp"

#include "signaddr/core/error.hpp"
#include "signaddr/detgeom/yolo_io.hpp"

namespace signaddr::detgeom {

std::vector<Detection> detect(DetectorAdapter& adapter, const core::Image& image,
                              const std::string& image_id) {
  try {
    return adapter.detect(image, image_id);
  } catch (const std::exception& e) {
    throw Error("detector '" + adapter.name() + "' failed on image '" + image_id + "': " + e.what());
  }
}

OracleAdapter::OracleAdapter(std::filesystem::path labels_dir) : labels_dir_(std::move(labels_dir)) {
  if (!std::filesystem::is_directory(labels_dir_)) {
    throw ValidationError("oracle adapter labels directory missing: " + labels_dir_.string());
  }
}

std::vector<Detection> OracleAdapter::detect(const core::Image& image, const std::string& image_id) {
  (void)image;
  const std::filesystem::path label_file = labels_dir_ / (image_id + ".txt");
  if (!std::filesystem::exists(label_file)) return {};
  std::vector<Detection> out;
  for (const GroundTruthAnnotation& ann : read_yolo_labels(label_file)) {
    out.push_back(Detection{ann.box, ann.class_id, 1.0});
  }
  return out;
}

ConstantBoxAdapter::ConstantBoxAdapter(BoundingBox box, int class_id, double confidence) {
  validate_box(box);
  detection_ = Detection{box, class_id, confidence};
}

std::vector<Detection> ConstantBoxAdapter::detect(const core::Image& image, const std::string& image_id) {
  (void)image;
  (void)image_id;
  return {detection_};
}

}  // namespace signaddr::detgeom
