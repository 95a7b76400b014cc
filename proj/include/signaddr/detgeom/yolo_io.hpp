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
#include <vector>

#include "signaddr/detgeom/detgeom.hpp"

namespace signaddr::detgeom {

/// Label files: one `class cx cy w h` line per box, whitespace separated,
/// relative coordinates, one file per image with the image's basename.
/// The image_id of returned annotations is the file stem.
std::vector<GroundTruthAnnotation> read_yolo_labels(const std::filesystem::path& path);
/// Writes coordinates with 6 decimal places; round-trips at that precision.
void write_yolo_labels(const std::vector<GroundTruthAnnotation>& annotations,
                       const std::filesystem::path& path);

/// Prediction files carry one extra trailing field: `class cx cy w h conf`.
std::vector<Detection> read_yolo_predictions(const std::filesystem::path& path);
void write_yolo_predictions(const std::vector<Detection>& detections,
                            const std::filesystem::path& path);

}  // namespace signaddr::detgeom
