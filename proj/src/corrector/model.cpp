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

#include "signaddr/corrector/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/nn/checkpoint.hpp"

namespace signaddr::corrector {

using nn::Tensor;
using nn::Var;

nlohmann::json CorrectorConfig::to_json() const {
  return nlohmann::json{{"encoder_layers", encoder_layers},
                        {"decoder_layers", decoder_layers},
                        {"width", width},
                        {"heads", heads},
                        {"ff_width", ff_width},
                        {"max_seq_len", max_seq_len},
                        {"batch_size", batch_size},
                        {"optimizer", optimizer},
                        {"lr", lr},
                        {"warmup_steps", warmup_steps},
                        {"weight_decay", weight_decay},
                        {"grad_clip", grad_clip},
                        {"epochs", epochs},
                        {"early_stop_wla", early_stop_wla},
                        {"seed", seed}};
}

CorrectorConfig CorrectorConfig::from_json(const nlohmann::json& j) {
  CorrectorConfig c;
  c.encoder_layers = j.value("encoder_layers", c.encoder_layers);
  c.decoder_layers = j.value("decoder_layers", c.decoder_layers);
  c.width = j.value("width", c.width);
  c.heads = j.value("heads", c.heads);
  c.ff_width = j.value("ff_width", c.ff_width);
  c.max_seq_len = j.value("max_seq_len", c.max_seq_len);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.optimizer = j.value("optimizer", c.optimizer);
  c.lr = j.value("lr", c.lr);
  c.warmup_steps = j.value("warmup_steps", c.warmup_steps);
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.grad_clip = j.value("grad_clip", c.grad_clip);
  c.epochs = j.value("epochs", c.epochs);
  c.early_stop_wla = j.value("early_stop_wla", c.early_stop_wla);
  c.seed = j.value("seed", c.seed);
  if (c.width % c.heads != 0) throw ValidationError("corrector width must divide by head count");
  if (c.encoder_layers < 1 || c.decoder_layers < 1 || c.max_seq_len < 4) {
    throw ValidationError("corrector config dimensions must be positive");
  }
  return c;
}

CorrectorModel::CorrectorModel(CorrectorConfig config, Tokenizer tokenizer)
    : config_(config), tokenizer_(std::move(tokenizer)) {
  core::Rng rng(core::Rng::mix(config_.seed, 0x636F7272ULL));  // "corr"
  embedding_ = nn::Embedding(params_, "embed", tokenizer_.vocab_size(), config_.width, rng);
  positions_ = nn::sinusoidal_positions(config_.max_seq_len, config_.width);
  for (int l = 0; l < config_.encoder_layers; ++l) {
    encoder_.emplace_back(params_, "enc" + std::to_string(l), config_.width, config_.heads,
                          config_.ff_width, rng);
  }
  for (int l = 0; l < config_.decoder_layers; ++l) {
    decoder_.emplace_back(params_, "dec" + std::to_string(l), config_.width, config_.heads,
                          config_.ff_width, rng);
  }
  output_ = nn::Linear(params_, "out", config_.width, tokenizer_.vocab_size(), rng);
}

std::vector<int> CorrectorModel::checked_ids(const std::string& text) const {
  std::vector<int> ids = tokenizer_.encode(text);
  if (static_cast<int>(ids.size()) + 2 > config_.max_seq_len) {
    throw ValidationError("input exceeds max sequence length (" + std::to_string(ids.size()) +
                          " tokens, limit " + std::to_string(config_.max_seq_len - 2) + ")");
  }
  return ids;
}

Var CorrectorModel::embed_with_positions(const std::vector<int>& ids) const {
  const int n = static_cast<int>(ids.size());
  Tensor pos({n, config_.width});
  for (int i = 0; i < n; ++i) {
    std::copy(positions_.row(i), positions_.row(i) + config_.width, pos.row(i));
  }
  return nn::add(embedding_(ids), nn::constant(std::move(pos)));
}

Var CorrectorModel::encode_ids(const std::vector<int>& src_ids) const {
  std::vector<int> ids = src_ids;
  if (ids.empty()) ids.push_back(Tokenizer::kPad);  // degenerate empty source
  Var x = embed_with_positions(ids);
  for (const auto& layer : encoder_) x = layer(x);
  return x;
}

Var CorrectorModel::decode_logits(const Var& memory, const std::vector<int>& decoder_inputs) const {
  const Tensor mask = nn::causal_mask(static_cast<int>(decoder_inputs.size()));
  Var x = embed_with_positions(decoder_inputs);
  for (const auto& layer : decoder_) x = layer(x, memory, mask);
  return output_(x);
}

core::Tensor CorrectorModel::teacher_logits(const std::vector<int>& src_ids,
                                            const std::vector<int>& decoder_inputs) const {
  return decode_logits(encode_ids(src_ids), decoder_inputs)->value;
}

Var CorrectorModel::loss(const std::string& corrupted, const std::string& original) const {
  const std::vector<int> src = checked_ids(corrupted);
  const std::vector<int> tgt = checked_ids(original);
  std::vector<int> inputs = {Tokenizer::kStart};
  inputs.insert(inputs.end(), tgt.begin(), tgt.end());
  std::vector<int> outputs = tgt;
  outputs.push_back(Tokenizer::kEnd);
  return nn::cross_entropy_rows(decode_logits(encode_ids(src), inputs), outputs);
}

std::string CorrectorModel::correct(const std::string& corrupted, int beam_width) const {
  const std::vector<int> src = checked_ids(corrupted);
  const Var memory = encode_ids(src);
  const int max_steps = config_.max_seq_len - 1;

  struct Hyp {
    std::vector<int> ids;  // emitted tokens, no markers
    double logp = 0.0;
    bool done = false;
  };
  const int width = std::max(1, beam_width);
  std::vector<Hyp> beam = {{{}, 0.0, false}};
  for (int step = 0; step < max_steps; ++step) {
    bool all_done = true;
    std::vector<Hyp> expanded;
    for (const Hyp& hyp : beam) {
      if (hyp.done) {
        expanded.push_back(hyp);
        continue;
      }
      all_done = false;
      std::vector<int> inputs = {Tokenizer::kStart};
      inputs.insert(inputs.end(), hyp.ids.begin(), hyp.ids.end());
      const Var logits = decode_logits(memory, inputs);
      const int last = logits->value.rows() - 1;
      const int vocab = logits->value.cols();
      // log softmax of the final row
      double m = logits->value(last, 0);
      for (int k = 1; k < vocab; ++k) m = std::max(m, static_cast<double>(logits->value(last, k)));
      double z = 0.0;
      for (int k = 0; k < vocab; ++k) z += std::exp(static_cast<double>(logits->value(last, k)) - m);
      const double log_z = m + std::log(z);
      for (int k = 0; k < vocab; ++k) {
        if (k == Tokenizer::kPad || k == Tokenizer::kStart) continue;
        Hyp next = hyp;
        next.logp += static_cast<double>(logits->value(last, k)) - log_z;
        if (k == Tokenizer::kEnd) {
          next.done = true;
        } else {
          next.ids.push_back(k);
        }
        expanded.push_back(std::move(next));
      }
    }
    if (all_done) break;
    std::sort(expanded.begin(), expanded.end(), [](const Hyp& a, const Hyp& b) {
      if (a.logp != b.logp) return a.logp > b.logp;
      return a.ids < b.ids;
    });
    if (static_cast<int>(expanded.size()) > width) expanded.resize(static_cast<std::size_t>(width));
    beam = std::move(expanded);
  }
  const Hyp* best = &beam.front();
  for (const Hyp& hyp : beam) {
    if (hyp.done && !best->done) best = &hyp;
  }
  return tokenizer_.decode(best->ids);
}

std::vector<core::Tensor> CorrectorModel::collect_attention_rows() const {
  std::vector<core::Tensor> rows;
  for (const auto& layer : encoder_) {
    for (const core::Tensor& t : layer.self_attn.last_attention) rows.push_back(t);
  }
  for (const auto& layer : decoder_) {
    for (const core::Tensor& t : layer.self_attn.last_attention) rows.push_back(t);
    for (const core::Tensor& t : layer.cross_attn.last_attention) rows.push_back(t);
  }
  return rows;
}

void CorrectorModel::save(const std::filesystem::path& path) const {
  nn::Checkpoint ckpt;
  ckpt.header["kind"] = "corrector";
  ckpt.header["config"] = config_.to_json();
  ckpt.header["tokenizer"] = tokenizer_.to_json();
  ckpt.tensors = nn::snapshot_params(params_);
  nn::save_checkpoint(ckpt, path);
}

CorrectorModel CorrectorModel::load(const std::filesystem::path& path) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(path);
  if (ckpt.header.value("kind", "") != "corrector") {
    throw ValidationError("checkpoint is not a corrector model: " + path.string());
  }
  CorrectorModel model(CorrectorConfig::from_json(ckpt.header.at("config")),
                       Tokenizer::from_json(ckpt.header.at("tokenizer")));
  nn::restore_params(model.params_, ckpt.tensors);
  return model;
}

CorrectorTrainReport train_corrector(CorrectorModel& model,
                                     const std::vector<synthgen::CorrectionPair>& pairs) {
  if (pairs.empty()) throw ValidationError("corrector training set is empty");
  const CorrectorConfig& cfg = model.config();
  auto optimizer = nn::make_optimizer(cfg.optimizer, cfg.lr, cfg.grad_clip, cfg.weight_decay,
                                      cfg.warmup_steps);
  CorrectorTrainReport report;
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  const float inv_batch = 1.0f / static_cast<float>(cfg.batch_size);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    core::Rng shuffle_rng(core::Rng::mix(cfg.seed, 0x2000 + static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    double epoch_loss = 0.0;
    int in_batch = 0;
    for (std::size_t idx : order) {
      Var loss = model.loss(pairs[idx].corrupted, pairs[idx].original);
      epoch_loss += loss->value[0];
      nn::backward(nn::scale(loss, inv_batch));
      if (++in_batch == cfg.batch_size) {
        optimizer->step(model.params());
        in_batch = 0;
      }
    }
    if (in_batch > 0) optimizer->step(model.params());
    report.epoch_loss.push_back(static_cast<float>(epoch_loss / static_cast<double>(pairs.size())));
    report.epochs_run = epoch + 1;

    // Autoregressive evaluation costs as much as training; probe every
    // fifth epoch.
    if (cfg.early_stop_wla > 0.0 && ((epoch + 1) % 5 == 0 || epoch + 1 == cfg.epochs)) {
      std::vector<std::string> outputs, refs;
      for (const auto& pair : pairs) {
        outputs.push_back(model.correct(pair.corrupted));
        refs.push_back(pair.original);
      }
      if (word_level_accuracy(outputs, refs) >= cfg.early_stop_wla) break;
    }
  }
  return report;
}

double word_level_accuracy(const std::vector<std::string>& outputs,
                           const std::vector<std::string>& references, bool bag_of_words) {
  if (outputs.size() != references.size()) {
    throw ValidationError("output/reference counts differ");
  }
  std::size_t matched = 0, total = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const auto out_words = core::split_whitespace(outputs[i]);
    const auto ref_words = core::split_whitespace(references[i]);
    total += ref_words.size();
    if (bag_of_words) {
      std::map<std::string, int> bag;
      for (const std::string& w : out_words) ++bag[w];
      for (const std::string& w : ref_words) {
        auto it = bag.find(w);
        if (it != bag.end() && it->second > 0) {
          --it->second;
          ++matched;
        }
      }
    } else {
      for (std::size_t t = 0; t < ref_words.size() && t < out_words.size(); ++t) {
        if (out_words[t] == ref_words[t]) ++matched;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

}  // namespace signaddr::corrector
