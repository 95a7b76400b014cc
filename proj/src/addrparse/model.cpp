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

#include "signaddr/addrparse/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/nn/checkpoint.hpp"

namespace signaddr::addrparse {

using nn::Tensor;
using nn::Var;

ParserArch parser_arch_from_string(const std::string& name) {
  if (name == "seq2seq-rnn") return ParserArch::kSeq2SeqRnn;
  if (name == "seq2seq-lstm") return ParserArch::kSeq2SeqLstm;
  if (name == "seq2seq-bilstm") return ParserArch::kSeq2SeqBiLstm;
  if (name == "transformer-encoder") return ParserArch::kTransformerEncoder;
  throw ValidationError("unknown parser architecture: " + name);
}

std::string parser_arch_to_string(ParserArch arch) {
  switch (arch) {
    case ParserArch::kSeq2SeqRnn: return "seq2seq-rnn";
    case ParserArch::kSeq2SeqLstm: return "seq2seq-lstm";
    case ParserArch::kSeq2SeqBiLstm: return "seq2seq-bilstm";
    case ParserArch::kTransformerEncoder: return "transformer-encoder";
  }
  return "?";
}

nlohmann::json ParserConfig::to_json() const {
  return nlohmann::json{{"architecture", parser_arch_to_string(architecture)},
                        {"embed", embed},
                        {"hidden", hidden},
                        {"encoder_layers", encoder_layers},
                        {"heads", heads},
                        {"ff_width", ff_width},
                        {"max_seq_len", max_seq_len},
                        {"raw_labels", raw_labels},
                        {"batch_size", batch_size},
                        {"optimizer", optimizer},
                        {"lr", lr},
                        {"warmup_steps", warmup_steps},
                        {"weight_decay", weight_decay},
                        {"grad_clip", grad_clip},
                        {"epochs", epochs},
                        {"early_stop_token_acc", early_stop_token_acc},
                        {"seed", seed}};
}

ParserConfig ParserConfig::from_json(const nlohmann::json& j) {
  ParserConfig c;
  c.architecture = parser_arch_from_string(j.value("architecture", parser_arch_to_string(c.architecture)));
  c.embed = j.value("embed", c.embed);
  c.hidden = j.value("hidden", c.hidden);
  c.encoder_layers = j.value("encoder_layers", c.encoder_layers);
  c.heads = j.value("heads", c.heads);
  c.ff_width = j.value("ff_width", c.ff_width);
  c.max_seq_len = j.value("max_seq_len", c.max_seq_len);
  c.raw_labels = j.value("raw_labels", c.raw_labels);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.optimizer = j.value("optimizer", c.optimizer);
  c.lr = j.value("lr", c.lr);
  c.warmup_steps = j.value("warmup_steps", c.warmup_steps);
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.grad_clip = j.value("grad_clip", c.grad_clip);
  c.epochs = j.value("epochs", c.epochs);
  c.early_stop_token_acc = j.value("early_stop_token_acc", c.early_stop_token_acc);
  c.seed = j.value("seed", c.seed);
  if (c.embed < 1 || c.hidden < 1 || c.encoder_layers < 1 || c.max_seq_len < 2) {
    throw ValidationError("parser config dimensions must be positive");
  }
  if (c.embed % c.heads != 0) throw ValidationError("parser embed width must divide by head count");
  return c;
}

TokenVocab TokenVocab::from_samples(const std::vector<synthgen::TaggedAddress>& samples) {
  std::set<std::string> vocab;
  for (const auto& sample : samples) {
    for (const std::string& token : sample.tokens) vocab.insert(token);
  }
  TokenVocab v;
  v.tokens_.assign(vocab.begin(), vocab.end());
  return v;
}

int TokenVocab::id_of(const std::string& token) const {
  const auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
  if (it == tokens_.end() || *it != token) return 0;
  return static_cast<int>(it - tokens_.begin()) + 1;
}

nlohmann::json TokenVocab::to_json() const { return tokens_; }

TokenVocab TokenVocab::from_json(const nlohmann::json& j) {
  TokenVocab v;
  v.tokens_ = j.get<std::vector<std::string>>();
  return v;
}

ParserModel::ParserModel(ParserConfig config, TokenVocab vocab)
    : config_(config),
      vocab_(std::move(vocab)),
      scheme_(config.raw_labels ? TagScheme::raw() : TagScheme::bio()) {
  core::Rng rng(core::Rng::mix(config_.seed, 0x70617273ULL));  // "pars"
  token_embed_ = nn::Embedding(params_, "tok", vocab_.size(), config_.embed, rng);
  if (config_.architecture == ParserArch::kTransformerEncoder) {
    positions_ = nn::sinusoidal_positions(config_.max_seq_len, config_.embed);
    for (int l = 0; l < config_.encoder_layers; ++l) {
      encoder_layers_.emplace_back(params_, "enc" + std::to_string(l), config_.embed, config_.heads,
                                   config_.ff_width, rng);
    }
    head_ = nn::Linear(params_, "head", config_.embed, scheme_.size(), rng);
    return;
  }
  tag_embed_ = nn::Embedding(params_, "tag", scheme_.size() + 1, config_.embed, rng);  // +1: start
  switch (config_.architecture) {
    case ParserArch::kSeq2SeqRnn:
      enc_rnn_ = nn::RnnCell(params_, "enc", config_.embed, config_.hidden, rng);
      dec_rnn_ = nn::RnnCell(params_, "dec", config_.embed + config_.hidden, config_.hidden, rng);
      head_ = nn::Linear(params_, "head", config_.hidden, scheme_.size(), rng);
      break;
    case ParserArch::kSeq2SeqLstm:
      enc_lstm_ = nn::LstmCell(params_, "enc", config_.embed, config_.hidden, rng);
      dec_lstm_ = nn::LstmCell(params_, "dec", config_.embed + config_.hidden, config_.hidden, rng);
      head_ = nn::Linear(params_, "head", config_.hidden, scheme_.size(), rng);
      break;
    case ParserArch::kSeq2SeqBiLstm:
      enc_bilstm_ = nn::BiLstm(params_, "enc", config_.embed, config_.hidden, rng);
      dec_lstm_ = nn::LstmCell(params_, "dec", config_.embed + 2 * config_.hidden, config_.hidden, rng);
      head_ = nn::Linear(params_, "head", config_.hidden, scheme_.size(), rng);
      break;
    default:
      break;
  }
}

Var ParserModel::tag_logits(const std::vector<std::string>& tokens,
                            const std::vector<int>* teacher_tags) const {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) throw DomainError("cannot parse an empty token list");
  if (n > config_.max_seq_len) {
    throw ValidationError("token sequence exceeds max length " + std::to_string(config_.max_seq_len));
  }
  std::vector<int> token_ids;
  token_ids.reserve(tokens.size());
  for (const std::string& token : tokens) token_ids.push_back(vocab_.id_of(token));
  Var emb = token_embed_(token_ids);

  if (config_.architecture == ParserArch::kTransformerEncoder) {
    Tensor pos({n, config_.embed});
    for (int i = 0; i < n; ++i) {
      std::copy(positions_.row(i), positions_.row(i) + config_.embed, pos.row(i));
    }
    Var x = nn::add(emb, nn::constant(std::move(pos)));
    for (const auto& layer : encoder_layers_) x = layer(x);
    return head_(x);  // per-token linear head; softmax lives in the loss/argmax
  }

  // Seq2seq: encode the token sequence, then decode exactly n tag steps.
  Var enc_states;
  switch (config_.architecture) {
    case ParserArch::kSeq2SeqRnn: enc_states = nn::run_rnn(enc_rnn_, emb); break;
    case ParserArch::kSeq2SeqLstm: enc_states = nn::run_lstm(enc_lstm_, emb); break;
    case ParserArch::kSeq2SeqBiLstm: enc_states = enc_bilstm_(emb); break;
    default: break;
  }

  const int start_tag = scheme_.size();  // dedicated start id in tag_embed_
  std::vector<Var> logit_rows;
  logit_rows.reserve(static_cast<std::size_t>(n));
  if (config_.architecture == ParserArch::kSeq2SeqRnn) {
    Var h = dec_rnn_.initial_state();
    int prev = start_tag;
    for (int t = 0; t < n; ++t) {
      Var x = nn::concat_cols(tag_embed_(std::vector<int>{prev}), nn::slice_rows(enc_states, t, t + 1));
      h = dec_rnn_.step(x, h);
      Var logits = head_(h);
      logit_rows.push_back(logits);
      if (teacher_tags != nullptr) {
        prev = (*teacher_tags)[static_cast<std::size_t>(t)];
      } else {
        int best = 0;
        for (int k = 1; k < logits->value.cols(); ++k) {
          if (logits->value(0, k) > logits->value(0, best)) best = k;
        }
        prev = best;
      }
    }
  } else {
    const nn::LstmCell& cell = dec_lstm_;
    auto [h, c] = cell.initial_state();
    int prev = start_tag;
    for (int t = 0; t < n; ++t) {
      Var x = nn::concat_cols(tag_embed_(std::vector<int>{prev}), nn::slice_rows(enc_states, t, t + 1));
      std::tie(h, c) = cell.step(x, h, c);
      Var logits = head_(h);
      logit_rows.push_back(logits);
      if (teacher_tags != nullptr) {
        prev = (*teacher_tags)[static_cast<std::size_t>(t)];
      } else {
        int best = 0;
        for (int k = 1; k < logits->value.cols(); ++k) {
          if (logits->value(0, k) > logits->value(0, best)) best = k;
        }
        prev = best;
      }
    }
  }
  return nn::concat_rows(logit_rows);
}

std::vector<std::string> ParserModel::parse(const std::vector<std::string>& tokens) const {
  const Var logits = tag_logits(tokens, nullptr);
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (int t = 0; t < logits->value.rows(); ++t) {
    int best = 0;
    for (int k = 1; k < logits->value.cols(); ++k) {
      if (logits->value(t, k) > logits->value(t, best)) best = k;
    }
    tags.push_back(scheme_.tag(best));
  }
  return tags;
}

Var ParserModel::loss(const synthgen::TaggedAddress& sample) const {
  synthgen::validate_tagged(sample);
  std::vector<int> targets;
  targets.reserve(sample.tags.size());
  for (const std::string& tag : sample.tags) targets.push_back(scheme_.id_of(scheme_.from_bio(tag)));
  const Var logits = tag_logits(sample.tokens, &targets);
  return nn::cross_entropy_rows(logits, targets);
}

void ParserModel::save(const std::filesystem::path& path) const {
  nn::Checkpoint ckpt;
  ckpt.header["kind"] = "parser";
  ckpt.header["config"] = config_.to_json();
  ckpt.header["vocab"] = vocab_.to_json();
  ckpt.tensors = nn::snapshot_params(params_);
  nn::save_checkpoint(ckpt, path);
}

ParserModel ParserModel::load(const std::filesystem::path& path) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(path);
  if (ckpt.header.value("kind", "") != "parser") {
    throw ValidationError("checkpoint is not a parser model: " + path.string());
  }
  ParserModel model(ParserConfig::from_json(ckpt.header.at("config")),
                    TokenVocab::from_json(ckpt.header.at("vocab")));
  nn::restore_params(model.params_, ckpt.tensors);
  return model;
}

ParserTrainReport train_parser(ParserModel& model, const std::vector<synthgen::TaggedAddress>& samples) {
  if (samples.empty()) throw ValidationError("parser training set is empty");
  const ParserConfig& cfg = model.config();
  auto optimizer = nn::make_optimizer(cfg.optimizer, cfg.lr, cfg.grad_clip, cfg.weight_decay,
                                      cfg.warmup_steps);
  ParserTrainReport report;
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  const float inv_batch = 1.0f / static_cast<float>(cfg.batch_size);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    core::Rng shuffle_rng(core::Rng::mix(cfg.seed, 0x3000 + static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    double epoch_loss = 0.0;
    int in_batch = 0;
    for (std::size_t idx : order) {
      Var loss = model.loss(samples[idx]);
      epoch_loss += loss->value[0];
      nn::backward(nn::scale(loss, inv_batch));
      if (++in_batch == cfg.batch_size) {
        optimizer->step(model.params());
        in_batch = 0;
      }
    }
    if (in_batch > 0) optimizer->step(model.params());
    report.epoch_loss.push_back(static_cast<float>(epoch_loss / static_cast<double>(samples.size())));
    report.epochs_run = epoch + 1;

    if (cfg.early_stop_token_acc > 0.0) {
      long matches = 0, total = 0;
      for (const auto& sample : samples) {
        const std::vector<std::string> tags = model.parse(sample.tokens);
        for (std::size_t i = 0; i < sample.tags.size(); ++i) {
          ++total;
          if (tags[i] == model.scheme().from_bio(sample.tags[i])) ++matches;
        }
      }
      if (total > 0 && static_cast<double>(matches) / total >= cfg.early_stop_token_acc) break;
    }
  }
  return report;
}

void write_parser_report(const ParserEvalReport& report, const std::filesystem::path& path) {
  nlohmann::json record;
  record["architecture"] = report.architecture;
  record["precision"] = report.metrics.precision;
  record["recall"] = report.metrics.recall;
  record["f1"] = report.metrics.f1;
  record["accuracy"] = report.metrics.accuracy;
  core::write_text_file(path, record.dump() + "\n");
}

}  // namespace signaddr::addrparse
