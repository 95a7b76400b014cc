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

#include <json.hpp>

#include "signaddr/addrparse/tags.hpp"
#include "signaddr/nn/layers.hpp"
#include "signaddr/nn/optim.hpp"

namespace signaddr::addrparse {

enum class ParserArch { kSeq2SeqRnn, kSeq2SeqLstm, kSeq2SeqBiLstm, kTransformerEncoder };

ParserArch parser_arch_from_string(const std::string& name);
std::string parser_arch_to_string(ParserArch arch);

struct ParserConfig {
  ParserArch architecture = ParserArch::kTransformerEncoder;
  int embed = 32;
  int hidden = 48;
  int encoder_layers = 2;  // desk scale; the full-size token classifier uses 12
  int heads = 2;
  int ff_width = 128;
  int max_seq_len = 64;
  bool raw_labels = false;  // merge B/I into bare component labels
  int batch_size = 32;
  std::string optimizer = "adamw";
  float lr = 1e-4f;
  int warmup_steps = 5000;
  float weight_decay = 0.01f;
  float grad_clip = 5.0f;
  int epochs = 100;
  double early_stop_token_acc = -1.0;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
  static ParserConfig from_json(const nlohmann::json& j);
};

/// Word-token vocabulary; id 0 is the unknown token.
class TokenVocab {
 public:
  TokenVocab() = default;
  static TokenVocab from_samples(const std::vector<synthgen::TaggedAddress>& samples);
  int size() const { return static_cast<int>(tokens_.size()) + 1; }
  int id_of(const std::string& token) const;  // 0 when unknown
  nlohmann::json to_json() const;
  static TokenVocab from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> tokens_;  // sorted
};

/// Address taggers in both formulations: seq2seq decoders over RNN/LSTM/
/// BiLSTM encoders (one tag emitted per input position, so the output length
/// is fixed by construction) and a transformer-encoder token classifier with
/// a linear+softmax head.
class ParserModel {
 public:
  ParserModel(ParserConfig config, TokenVocab vocab);

  const ParserConfig& config() const { return config_; }
  const TagScheme& scheme() const { return scheme_; }
  nn::ParamSet& params() { return params_; }

  /// One tag per token; throws DomainError on an empty token list.
  std::vector<std::string> parse(const std::vector<std::string>& tokens) const;

  nn::Var loss(const synthgen::TaggedAddress& sample) const;

  void save(const std::filesystem::path& path) const;
  static ParserModel load(const std::filesystem::path& path);

 private:
  nn::Var tag_logits(const std::vector<std::string>& tokens,
                     const std::vector<int>* teacher_tags) const;

  ParserConfig config_;
  TokenVocab vocab_;
  TagScheme scheme_;
  nn::ParamSet params_;

  nn::Embedding token_embed_;
  core::Tensor positions_;
  std::vector<nn::TransformerEncoderLayer> encoder_layers_;
  nn::Linear head_;

  nn::RnnCell enc_rnn_, dec_rnn_;
  nn::LstmCell enc_lstm_, dec_lstm_;
  nn::BiLstm enc_bilstm_;
  nn::Embedding tag_embed_;
};

struct ParserTrainReport {
  std::vector<float> epoch_loss;
  int epochs_run = 0;
};

ParserTrainReport train_parser(ParserModel& model,
                               const std::vector<synthgen::TaggedAddress>& samples);

struct ParserEvalReport {
  std::string architecture;
  EntityMetrics metrics;
};

/// One JSON record: {"architecture":..,"precision":..,"recall":..,"f1":..,
/// "accuracy":..}
void write_parser_report(const ParserEvalReport& report, const std::filesystem::path& path);

}  // namespace signaddr::addrparse
