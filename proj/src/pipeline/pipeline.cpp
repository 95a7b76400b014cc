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

#include "signaddr/pipeline/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"

namespace signaddr::pipeline {

void require_known_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                        const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const std::string& candidate : allowed) {
      if (key == candidate) {
        known = true;
        break;
      }
    }
    if (!known) throw ValidationError(context + ": unknown key '" + key + "'");
  }
}

nlohmann::json DetectorDefaults::to_json() const {
  return nlohmann::json{{"image_side", image_side},
                        {"momentum", momentum},
                        {"weight_decay", weight_decay},
                        {"burn_in", burn_in},
                        {"learning_rate", learning_rate},
                        {"max_batches", max_batches},
                        {"steps", steps},
                        {"batch", batch},
                        {"subdivision", subdivision}};
}

DetectorDefaults DetectorDefaults::from_json(const nlohmann::json& j) {
  require_known_keys(j,
                     {"image_side", "momentum", "weight_decay", "burn_in", "learning_rate",
                      "max_batches", "steps", "batch", "subdivision"},
                     "detector_defaults");
  DetectorDefaults d;
  d.image_side = j.value("image_side", d.image_side);
  d.momentum = j.value("momentum", d.momentum);
  d.weight_decay = j.value("weight_decay", d.weight_decay);
  d.burn_in = j.value("burn_in", d.burn_in);
  d.learning_rate = j.value("learning_rate", d.learning_rate);
  d.max_batches = j.value("max_batches", d.max_batches);
  if (j.contains("steps")) d.steps = j.at("steps").get<std::array<int, 2>>();
  d.batch = j.value("batch", d.batch);
  d.subdivision = j.value("subdivision", d.subdivision);
  return d;
}

nlohmann::json AdapterConfig::to_json() const {
  nlohmann::json j{{"kind", kind}};
  if (kind == "oracle") {
    j["labels_dir"] = labels_dir.string();
  } else {
    j["box"] = {box.cx, box.cy, box.w, box.h};
    j["class_id"] = class_id;
    j["confidence"] = confidence;
  }
  return j;
}

AdapterConfig AdapterConfig::from_json(const nlohmann::json& j,
                                       const std::filesystem::path& base_dir) {
  require_known_keys(j, {"kind", "labels_dir", "box", "class_id", "confidence"}, "adapter");
  AdapterConfig config;
  config.kind = j.at("kind").get<std::string>();
  if (config.kind == "oracle") {
    std::filesystem::path dir = j.at("labels_dir").get<std::string>();
    config.labels_dir = dir.is_absolute() ? dir : base_dir / dir;
  } else if (config.kind == "constant") {
    const auto arr = j.at("box").get<std::vector<double>>();
    if (arr.size() != 4) throw ValidationError("adapter box must have 4 values");
    config.box = {arr[0], arr[1], arr[2], arr[3]};
    config.class_id = j.value("class_id", 0);
    config.confidence = j.value("confidence", 1.0);
  } else {
    throw ValidationError("unknown adapter kind: " + config.kind);
  }
  return config;
}

std::unique_ptr<detgeom::DetectorAdapter> make_adapter(const AdapterConfig& config) {
  if (config.kind == "oracle") {
    return std::make_unique<detgeom::OracleAdapter>(config.labels_dir);
  }
  if (config.kind == "constant") {
    return std::make_unique<detgeom::ConstantBoxAdapter>(config.box, config.class_id,
                                                         config.confidence);
  }
  throw ValidationError("unknown adapter kind: " + config.kind);
}

nlohmann::json PipelineConfig::to_json() const {
  return nlohmann::json{{"seed", seed},
                        {"signboard_adapter", signboard_adapter.to_json()},
                        {"address_adapter", address_adapter.to_json()},
                        {"recognizer_checkpoint", recognizer_checkpoint.string()},
                        {"corrector_checkpoint", corrector_checkpoint.string()},
                        {"parser_checkpoint", parser_checkpoint.string()},
                        {"iou_threshold", iou_threshold},
                        {"beam_width", beam_width},
                        {"detector_defaults", detector_defaults.to_json()}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir) {
  require_known_keys(j,
                     {"seed", "signboard_adapter", "address_adapter", "recognizer_checkpoint",
                      "corrector_checkpoint", "parser_checkpoint", "iou_threshold", "beam_width",
                      "detector_defaults"},
                     "pipeline config");
  PipelineConfig config;
  config.seed = j.value("seed", config.seed);
  config.signboard_adapter = AdapterConfig::from_json(j.at("signboard_adapter"), base_dir);
  config.address_adapter = AdapterConfig::from_json(j.at("address_adapter"), base_dir);
  auto resolve = [&base_dir](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    const std::filesystem::path path = p;
    return path.is_absolute() ? path : base_dir / path;
  };
  config.recognizer_checkpoint = resolve(j.at("recognizer_checkpoint").get<std::string>());
  config.corrector_checkpoint = resolve(j.value("corrector_checkpoint", std::string()));
  config.parser_checkpoint = resolve(j.at("parser_checkpoint").get<std::string>());
  config.iou_threshold = j.value("iou_threshold", config.iou_threshold);
  if (!(config.iou_threshold > 0.0 && config.iou_threshold < 1.0)) {
    throw ValidationError("iou_threshold must lie in (0,1)");
  }
  config.beam_width = j.value("beam_width", config.beam_width);
  if (j.contains("detector_defaults")) {
    config.detector_defaults = DetectorDefaults::from_json(j.at("detector_defaults"));
  }
  return config;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::parse(core::read_text_file(path), nullptr, false);
  if (j.is_discarded()) throw ParseError("config is not valid JSON: " + path.string());
  return from_json(j, path.parent_path());
}

core::Image crop(const core::Image& image, const detgeom::BoundingBox& box) {
  detgeom::validate_box(box);
  const int x0 = std::clamp(static_cast<int>(std::floor(box.left() * image.width)), 0, image.width);
  const int x1 = std::clamp(static_cast<int>(std::ceil(box.right() * image.width)), 0, image.width);
  const int y0 = std::clamp(static_cast<int>(std::floor(box.top() * image.height)), 0, image.height);
  const int y1 = std::clamp(static_cast<int>(std::ceil(box.bottom() * image.height)), 0, image.height);
  if (x1 <= x0 || y1 <= y0) {
    throw ValidationError("crop rectangle collapses to zero area");
  }
  return core::crop_pixels(image, x0, y0, x1 - x0, y1 - y0);
}

Pipeline::Pipeline(const PipelineConfig& config) : config_(config) {
  signboard_adapter_ = make_adapter(config_.signboard_adapter);
  address_adapter_ = make_adapter(config_.address_adapter);
  recognizer_ = std::make_unique<recognizer::RecognizerModel>(
      recognizer::RecognizerModel::load(config_.recognizer_checkpoint));
  if (!config_.corrector_checkpoint.empty()) {
    corrector_ = std::make_unique<corrector::CorrectorModel>(
        corrector::CorrectorModel::load(config_.corrector_checkpoint));
  }
  parser_ = std::make_unique<addrparse::ParserModel>(
      addrparse::ParserModel::load(config_.parser_checkpoint));
}

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& timings) : timings_(timings) {}

  template <typename Fn>
  auto run(const std::string& stage, Fn&& fn) {
    const auto begin = std::chrono::steady_clock::now();
    struct Guard {
      StageClock* clock;
      std::string stage;
      std::chrono::steady_clock::time_point begin;
      ~Guard() {
        const auto end = std::chrono::steady_clock::now();
        clock->add(stage, std::chrono::duration<double>(end - begin).count());
      }
    } guard{this, stage, begin};
    return fn();
  }

  void add(const std::string& stage, double seconds) {
    for (StageTiming& t : timings_) {
      if (t.stage == stage) {
        t.seconds += seconds;
        return;
      }
    }
    timings_.push_back({stage, seconds});
  }

 private:
  std::vector<StageTiming>& timings_;
};

struct StageFailure {
  StageError error;
};

}  // namespace

PipelineResult Pipeline::run_one(const std::filesystem::path& image_path) const {
  PipelineResult result;
  result.image_id = image_path.stem().string();
  const auto total_begin = std::chrono::steady_clock::now();
  StageClock clock(result.timings);

  try {
    core::Image image = clock.run("input", [&] {
      try {
        return core::load_pgm(image_path);
      } catch (const std::exception& e) {
        throw StageFailure{{"input", result.image_id, e.what()}};
      }
    });

    const std::vector<detgeom::Detection> signboards = clock.run("detect-signboard", [&] {
      try {
        return detgeom::detect(*signboard_adapter_, image, result.image_id);
      } catch (const std::exception& e) {
        throw StageFailure{{"detect-signboard", result.image_id, e.what()}};
      }
    });

    for (std::size_t si = 0; si < signboards.size(); ++si) {
      SignboardResult sb;
      sb.detection = signboards[si];
      const std::string sb_id = result.image_id + "#sb" + std::to_string(si);

      const core::Image sb_crop = clock.run("crop", [&] {
        try {
          return crop(image, signboards[si].box);
        } catch (const std::exception& e) {
          throw StageFailure{{"crop", sb_id, e.what()}};
        }
      });

      const std::vector<detgeom::Detection> regions = clock.run("detect-address", [&] {
        try {
          return detgeom::detect(*address_adapter_, sb_crop, sb_id);
        } catch (const std::exception& e) {
          throw StageFailure{{"detect-address", sb_id, e.what()}};
        }
      });

      for (std::size_t ai = 0; ai < regions.size(); ++ai) {
        AddressResult addr;
        addr.box = regions[ai].box;
        const std::string addr_id = sb_id + "#addr" + std::to_string(ai);

        const core::Image line = clock.run("crop", [&] {
          try {
            return crop(sb_crop, regions[ai].box);
          } catch (const std::exception& e) {
            throw StageFailure{{"crop", addr_id, e.what()}};
          }
        });

        addr.recognized_text = clock.run("recognize", [&] {
          try {
            return recognizer_->predict(line, config_.beam_width);
          } catch (const std::exception& e) {
            throw StageFailure{{"recognize", addr_id, e.what()}};
          }
        });

        addr.corrected_text = clock.run("correct", [&] {
          if (corrector_ == nullptr) return addr.recognized_text;  // pass-through
          try {
            return corrector_->correct(addr.recognized_text);
          } catch (const std::exception& e) {
            throw StageFailure{{"correct", addr_id, e.what()}};
          }
        });

        clock.run("parse", [&] {
          addr.tokens = addrparse::tokenize_words(addr.corrected_text);
          if (addr.tokens.empty()) return 0;  // nothing to tag
          try {
            addr.tags = parser_->parse(addr.tokens);
          } catch (const std::exception& e) {
            throw StageFailure{{"parse", addr_id, e.what()}};
          }
          return 0;
        });

        sb.addresses.push_back(std::move(addr));
      }
      result.signboards.push_back(std::move(sb));
    }
  } catch (const StageFailure& failure) {
    result.error = failure.error;
  }

  const auto total_end = std::chrono::steady_clock::now();
  result.total_seconds = std::chrono::duration<double>(total_end - total_begin).count();
  return result;
}

std::vector<PipelineResult> Pipeline::run(const std::vector<std::filesystem::path>& images) const {
  std::vector<PipelineResult> results;
  results.reserve(images.size());
  for (const auto& path : images) results.push_back(run_one(path));
  return results;
}

namespace {

nlohmann::json box_to_json(const detgeom::BoundingBox& box) {
  return nlohmann::json{{"cx", box.cx}, {"cy", box.cy}, {"w", box.w}, {"h", box.h}};
}

}  // namespace

nlohmann::json result_to_json(const PipelineResult& result, bool include_timings) {
  nlohmann::json j;
  j["image_id"] = result.image_id;
  j["signboards"] = nlohmann::json::array();
  for (const SignboardResult& sb : result.signboards) {
    nlohmann::json sj;
    sj["box"] = box_to_json(sb.detection.box);
    sj["confidence"] = sb.detection.confidence;
    sj["addresses"] = nlohmann::json::array();
    for (const AddressResult& addr : sb.addresses) {
      nlohmann::json aj;
      aj["box"] = box_to_json(addr.box);
      aj["recognized"] = addr.recognized_text;
      aj["corrected"] = addr.corrected_text;
      aj["tokens"] = addr.tokens;
      aj["tags"] = addr.tags;
      sj["addresses"].push_back(std::move(aj));
    }
    j["signboards"].push_back(std::move(sj));
  }
  if (result.error.has_value()) {
    j["error"] = {{"stage", result.error->stage},
                  {"item", result.error->item_id},
                  {"message", result.error->message}};
  } else {
    j["error"] = nullptr;
  }
  if (include_timings) {
    nlohmann::json tj = nlohmann::json::object();
    for (const StageTiming& t : result.timings) tj[t.stage] = t.seconds;
    j["timings"] = std::move(tj);
    j["total_seconds"] = result.total_seconds;
  }
  return j;
}

void write_pipeline_results(const std::vector<PipelineResult>& results,
                            const std::filesystem::path& path, bool include_timings) {
  std::string out;
  for (const PipelineResult& result : results) {
    out += result_to_json(result, include_timings).dump();
    out += '\n';
  }
  core::write_text_file(path, out);
}

}  // namespace signaddr::pipeline
