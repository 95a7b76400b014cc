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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "signaddr/core/image.hpp"
#include "signaddr/nn/layers.hpp"
#include "signaddr/nn/optim.hpp"
#include "signaddr/recognizer/alphabet.hpp"
#include "signaddr/recognizer/ctc.hpp"
#include "signaddr/synthgen/render.hpp"

namespace signaddr::recognizer {

enum class Backbone { kVgg, kRcnn, kGrcl, kResnet };
enum class Framework { kCtc, kAttention };

Backbone backbone_from_string(const std::string& name);
std::string backbone_to_string(Backbone b);
Framework framework_from_string(const std::string& name);
std::string framework_to_string(Framework f);

struct RecognizerConfig {
  int input_height = 64;
  int input_width = 600;  // maximum line width accepted at inference
  Backbone backbone = Backbone::kVgg;
  Framework framework = Framework::kCtc;
  int conv_channels = 8;  // stage channels are c, 2c, 3c, 4c
  int hidden = 48;        // recurrent hidden size
  int attention_embed = 16;
  int batch_size = 32;
  std::string optimizer = "adadelta";
  float lr = 0.01f;
  float rho = 0.95f;
  float beta1 = 0.9f;  // recorded from the stated settings; consumed by adamw
  float eps = 1e-8f;
  float grad_clip = 5.0f;
  int epochs = 200;
  bool error_on_unreachable = false;  // else skip the sample with a warning
  double early_stop_wra = -1.0;       // stop once train WRA reaches this
  std::uint64_t seed = 1;

  /// Horizontal pixels per output frame of the conv stack.
  static constexpr int kStrideProduct = 4;
  int frame_feature_dim() const { return 16 * conv_channels; }

  nlohmann::json to_json() const;
  static RecognizerConfig from_json(const nlohmann::json& j);
};

/// Pads/rescales a line image to the model input contract: height 64, width
/// a multiple of the stride product and at most max_width.
core::Image normalize_line_image(const core::Image& line, int max_width);

class RecognizerModel {
 public:
  RecognizerModel(RecognizerConfig config, Alphabet alphabet);

  const RecognizerConfig& config() const { return config_; }
  const Alphabet& alphabet() const { return alphabet_; }
  nn::ParamSet& params() { return params_; }
  int max_decode_len() const { return max_decode_len_; }
  void set_max_decode_len(int len) { max_decode_len_ = len; }

  /// CTC framework: [T x K] frame logits for a normalized line image.
  nn::Var forward_frames(const core::Image& line) const;
  /// Softmaxed frame distributions, for the decoders.
  FrameDistributionSequence frame_distributions(const core::Image& line) const;

  /// Per-sample training loss (CTC loss or teacher-forced cross-entropy).
  nn::Var loss(const synthgen::TextLineSample& sample) const;

  /// Greedy prediction (beam_width <= 1) or beam decoding.
  std::string predict(const core::Image& line, long beam_width = 1) const;

  /// Attention-framework decode exposing the per-step attention rows.
  std::vector<int> attention_decode(const core::Image& line,
                                    std::vector<core::Tensor>* attention_rows) const;

  void save(const std::filesystem::path& path) const;
  static RecognizerModel load(const std::filesystem::path& path);

 private:
  struct Net;
  nn::Var encode_frames(const core::Image& line) const;

  RecognizerConfig config_;
  Alphabet alphabet_;
  nn::ParamSet params_;
  std::shared_ptr<Net> net_;
  int max_decode_len_ = 64;
};

struct TrainReport {
  std::vector<float> epoch_loss;  // mean per-sample loss
  int epochs_run = 0;
  int skipped_samples = 0;
};

/// Single-threaded, deterministic under config.seed. Accumulates gradients
/// over config.batch_size samples per optimizer step.
TrainReport train_recognizer(RecognizerModel& model,
                             const std::vector<synthgen::TextLineSample>& dataset);

/// Exact whole-sequence matches over total references; token mode counts
/// positional whitespace-token matches over total reference tokens.
double word_recognition_accuracy(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& references,
                                 bool token_level = false);

}  // namespace signaddr::recognizer
