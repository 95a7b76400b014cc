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
#include <memory>
#include <string>
#include <vector>

#include "signaddr/core/image.hpp"
#include "signaddr/detgeom/detgeom.hpp"

namespace signaddr::detgeom {

/// Pluggable stand-in for a trained object detector. Implementations must be
/// deterministic; boxes are returned in the image's relative frame.
class DetectorAdapter {
 public:
  virtual ~DetectorAdapter() = default;
  virtual std::vector<Detection> detect(const core::Image& image, const std::string& image_id) = 0;
  virtual std::string name() const = 0;
};

/// Wraps adapter failures into an Error naming the image, so pipeline stages
/// can attribute them.
std::vector<Detection> detect(DetectorAdapter& adapter, const core::Image& image,
                              const std::string& image_id);

/// Replays stored ground-truth boxes with confidence 1.0; images without a
/// label file produce no detections.
class OracleAdapter : public DetectorAdapter {
 public:
  explicit OracleAdapter(std::filesystem::path labels_dir);
  std::vector<Detection> detect(const core::Image& image, const std::string& image_id) override;
  std::string name() const override { return "oracle"; }

 private:
  std::filesystem::path labels_dir_;
};

/// Returns the same box for every image; useful as a negative control.
class ConstantBoxAdapter : public DetectorAdapter {
 public:
  ConstantBoxAdapter(BoundingBox box, int class_id, double confidence);
  std::vector<Detection> detect(const core::Image& image, const std::string& image_id) override;
  std::string name() const override { return "constant"; }

 private:
  Detection detection_;
};

}  // namespace signaddr::detgeom
