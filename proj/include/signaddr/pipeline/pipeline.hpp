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

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "signaddr/addrparse/model.hpp"
#include "signaddr/corrector/model.hpp"
#include "signaddr/core/image.hpp"
#include "signaddr/detgeom/adapter.hpp"
#include "signaddr/recognizer/model.hpp"

namespace signaddr::pipeline {

/// Detector training defaults recorded in the config schema. No detector is
/// trained here; the values document the intended full-scale settings and
/// ride along in serialized configs.
struct DetectorDefaults {
  int image_side = 416;
  double momentum = 0.95;
  double weight_decay = 0.0005;
  int burn_in = 1000;
  double learning_rate = 0.001;
  int max_batches = 6000;
  std::array<int, 2> steps = {4800, 5400};
  int batch = 64;
  int subdivision = 16;

  nlohmann::json to_json() const;
  static DetectorDefaults from_json(const nlohmann::json& j);
};

struct AdapterConfig {
  std::string kind;  // "oracle" or "constant"
  std::filesystem::path labels_dir;
  detgeom::BoundingBox box{0.5, 0.5, 1.0, 1.0};
  int class_id = 0;
  double confidence = 1.0;

  nlohmann::json to_json() const;
  static AdapterConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  AdapterConfig signboard_adapter;
  AdapterConfig address_adapter;
  std::filesystem::path recognizer_checkpoint;
  std::filesystem::path corrector_checkpoint;  // empty disables the stage
  std::filesystem::path parser_checkpoint;
  double iou_threshold = 0.5;
  long beam_width = 1;
  DetectorDefaults detector_defaults;

  nlohmann::json to_json() const;
  /// Strict: unknown keys are errors. Relative paths resolve against base_dir.
  static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);
};

struct StageError {
  std::string stage;
  std::string item_id;
  std::string message;
};

struct AddressResult {
  detgeom::BoundingBox box;  // relative to its signboard crop
  std::string recognized_text;
  std::string corrected_text;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

struct SignboardResult {
  detgeom::Detection detection;
  std::vector<AddressResult> addresses;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineResult {
  std::string image_id;
  std::vector<SignboardResult> signboards;
  std::optional<StageError> error;  // set iff downstream fields were truncated
  std::vector<StageTiming> timings;
  double total_seconds = 0.0;
};

/// Pixel crop of a relative box: floor for the origin, ceil for the extent,
/// clamped to bounds, so any valid box yields at least one pixel.
core::Image crop(const core::Image& image, const detgeom::BoundingBox& box);

/// detect signboards -> crop -> detect address regions -> crop -> recognize
/// -> (optionally) correct -> parse. Items fail independently.
class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& config);

  PipelineResult run_one(const std::filesystem::path& image_path) const;
  std::vector<PipelineResult> run(const std::vector<std::filesystem::path>& images) const;

  bool correction_enabled() const { return corrector_ != nullptr; }

 private:
  PipelineConfig config_;
  std::unique_ptr<detgeom::DetectorAdapter> signboard_adapter_;
  std::unique_ptr<detgeom::DetectorAdapter> address_adapter_;
  std::unique_ptr<recognizer::RecognizerModel> recognizer_;
  std::unique_ptr<corrector::CorrectorModel> corrector_;
  std::unique_ptr<addrparse::ParserModel> parser_;
};

nlohmann::json result_to_json(const PipelineResult& result, bool include_timings = false);
/// Line-delimited JSON, one record per image. Timings are omitted by default
/// so reruns with a fixed seed are byte-identical.
void write_pipeline_results(const std::vector<PipelineResult>& results,
                            const std::filesystem::path& path, bool include_timings = false);

/// Factory shared with the CLI and tests.
std::unique_ptr<detgeom::DetectorAdapter> make_adapter(const AdapterConfig& config);

/// Throws ValidationError when `j` holds keys outside `allowed`.
void require_known_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                        const std::string& context);

}  // namespace signaddr::pipeline
