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

#include <json.hpp>

#include "signaddr/corrector/tokenizer.hpp"
#include "signaddr/nn/layers.hpp"
#include "signaddr/nn/optim.hpp"
#include "signaddr/synthgen/inject.hpp"

namespace signaddr::corrector {

struct CorrectorConfig {
  int encoder_layers = 2;
  int decoder_layers = 2;
  int width = 128;
  int heads = 4;
  int ff_width = 512;
  int max_seq_len = 256;
  int batch_size = 32;
  std::string optimizer = "adamw";
  float lr = 5e-5f;
  int warmup_steps = 500;  // the stated 10000 scaled to desk-size datasets
  float weight_decay = 0.01f;
  float grad_clip = 5.0f;
  int epochs = 30;
  double early_stop_wla = -1.0;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
  static CorrectorConfig from_json(const nlohmann::json& j);
};

/// Transformer encoder-decoder over tokenized character sequences. Decoder
/// self-attention is causally masked; positions come from a fixed sinusoidal
/// table added to the embeddings.
class CorrectorModel {
 public:
  CorrectorModel(CorrectorConfig config, Tokenizer tokenizer);

  const CorrectorConfig& config() const { return config_; }
  const Tokenizer& tokenizer() const { return tokenizer_; }
  nn::ParamSet& params() { return params_; }

  nn::Var encode_ids(const std::vector<int>& src_ids) const;
  /// Decoder logits rows for teacher-forced inputs (start + target prefix).
  nn::Var decode_logits(const nn::Var& memory, const std::vector<int>& decoder_inputs) const;
  /// Convenience for the causal-mask test: full forward, values only.
  core::Tensor teacher_logits(const std::vector<int>& src_ids,
                              const std::vector<int>& decoder_inputs) const;

  nn::Var loss(const std::string& corrupted, const std::string& original) const;

  /// Greedy (beam_width <= 1) or beam-search decode. Throws ValidationError
  /// when the input exceeds max_seq_len; inputs are never truncated.
  std::string correct(const std::string& corrupted, int beam_width = 1) const;

  /// Attention matrices gathered during the most recent forward pass.
  std::vector<core::Tensor> collect_attention_rows() const;

  void save(const std::filesystem::path& path) const;
  static CorrectorModel load(const std::filesystem::path& path);

 private:
  std::vector<int> checked_ids(const std::string& text) const;
  nn::Var embed_with_positions(const std::vector<int>& ids) const;

  CorrectorConfig config_;
  Tokenizer tokenizer_;
  nn::ParamSet params_;
  nn::Embedding embedding_;
  core::Tensor positions_;
  std::vector<nn::TransformerEncoderLayer> encoder_;
  std::vector<nn::TransformerDecoderLayer> decoder_;
  nn::Linear output_;
};

struct CorrectorTrainReport {
  std::vector<float> epoch_loss;
  int epochs_run = 0;
};

CorrectorTrainReport train_corrector(CorrectorModel& model,
                                     const std::vector<synthgen::CorrectionPair>& pairs);

/// Positional word matches over total reference words (whitespace tokens);
/// the bag-of-words variant ignores positions.
double word_level_accuracy(const std::vector<std::string>& outputs,
                           const std::vector<std::string>& references, bool bag_of_words = false);

}  // namespace signaddr::corrector
