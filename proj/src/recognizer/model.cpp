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

#include "signaddr/recognizer/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/utf8.hpp"
#include "signaddr/nn/checkpoint.hpp"

namespace signaddr::recognizer {

using nn::Var;
using nn::Tensor;

Backbone backbone_from_string(const std::string& name) {
  if (name == "vgg") return Backbone::kVgg;
  if (name == "rcnn") return Backbone::kRcnn;
  if (name == "grcl") return Backbone::kGrcl;
  if (name == "resnet") return Backbone::kResnet;
  throw ValidationError("unknown backbone: " + name);
}

std::string backbone_to_string(Backbone b) {
  switch (b) {
    case Backbone::kVgg: return "vgg";
    case Backbone::kRcnn: return "rcnn";
    case Backbone::kGrcl: return "grcl";
    case Backbone::kResnet: return "resnet";
  }
  return "?";
}

Framework framework_from_string(const std::string& name) {
  if (name == "ctc") return Framework::kCtc;
  if (name == "attention") return Framework::kAttention;
  throw ValidationError("unknown framework: " + name);
}

std::string framework_to_string(Framework f) {
  return f == Framework::kCtc ? "ctc" : "attention";
}

nlohmann::json RecognizerConfig::to_json() const {
  return nlohmann::json{{"input_height", input_height},
                        {"input_width", input_width},
                        {"backbone", backbone_to_string(backbone)},
                        {"framework", framework_to_string(framework)},
                        {"conv_channels", conv_channels},
                        {"hidden", hidden},
                        {"attention_embed", attention_embed},
                        {"batch_size", batch_size},
                        {"optimizer", optimizer},
                        {"lr", lr},
                        {"rho", rho},
                        {"beta1", beta1},
                        {"eps", eps},
                        {"grad_clip", grad_clip},
                        {"epochs", epochs},
                        {"error_on_unreachable", error_on_unreachable},
                        {"early_stop_wra", early_stop_wra},
                        {"seed", seed}};
}

RecognizerConfig RecognizerConfig::from_json(const nlohmann::json& j) {
  RecognizerConfig c;
  c.input_height = j.value("input_height", c.input_height);
  c.input_width = j.value("input_width", c.input_width);
  c.backbone = backbone_from_string(j.value("backbone", backbone_to_string(c.backbone)));
  c.framework = framework_from_string(j.value("framework", framework_to_string(c.framework)));
  c.conv_channels = j.value("conv_channels", c.conv_channels);
  c.hidden = j.value("hidden", c.hidden);
  c.attention_embed = j.value("attention_embed", c.attention_embed);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.optimizer = j.value("optimizer", c.optimizer);
  c.lr = j.value("lr", c.lr);
  c.rho = j.value("rho", c.rho);
  c.beta1 = j.value("beta1", c.beta1);
  c.eps = j.value("eps", c.eps);
  c.grad_clip = j.value("grad_clip", c.grad_clip);
  c.epochs = j.value("epochs", c.epochs);
  c.error_on_unreachable = j.value("error_on_unreachable", c.error_on_unreachable);
  c.early_stop_wra = j.value("early_stop_wra", c.early_stop_wra);
  c.seed = j.value("seed", c.seed);
  if (c.input_height != 64) throw ValidationError("recognizer input height must be 64");
  if (c.conv_channels < 1 || c.hidden < 1 || c.batch_size < 1 || c.grad_clip <= 0.0f) {
    throw ValidationError("recognizer config dimensions must be positive");
  }
  return c;
}

core::Image normalize_line_image(const core::Image& line, int max_width) {
  core::Image img = line;
  if (img.height != synthgen::kLineHeight) {
    const double scale = static_cast<double>(synthgen::kLineHeight) / img.height;
    const int new_w = std::max(1, static_cast<int>(std::lround(img.width * scale)));
    img = core::resize(img, new_w, synthgen::kLineHeight);
  }
  if (img.width > max_width) img = core::resize(img, max_width, synthgen::kLineHeight);
  const int stride = RecognizerConfig::kStrideProduct;
  const int padded = ((std::max(img.width, stride) + stride - 1) / stride) * stride;
  if (padded != img.width) {
    core::Image out(padded, img.height);
    for (int y = 0; y < img.height; ++y) {
      std::copy(img.px.begin() + static_cast<std::size_t>(y) * img.width,
                img.px.begin() + static_cast<std::size_t>(y + 1) * img.width,
                out.px.begin() + static_cast<std::size_t>(y) * padded);
    }
    img = std::move(out);
  }
  return img;
}

namespace {

// One backbone stage: 3x3 conv block in the variant's characteristic style,
// followed by max pooling.
struct ConvStage {
  Backbone kind = Backbone::kVgg;
  Var w1, b1;      // main conv
  Var w2, b2;      // second conv (resnet) / recurrent conv (rcnn, grcl)
  Var wg, bg;      // gate conv (grcl)
  Var proj;        // 1x1 projection as [out_c x in_c] (resnet)
  int pool_h = 2, pool_w = 2;

  Var operator()(const Var& x) const {
    using namespace signaddr::nn;
    Var y;
    switch (kind) {
      case Backbone::kVgg:
        y = relu_op(conv2d(x, w1, b1));
        break;
      case Backbone::kRcnn: {
        // Recurrent convolution: refine the response with shared weights.
        Var feed = conv2d(x, w1, b1);
        Var h = relu_op(feed);
        for (int it = 0; it < 2; ++it) h = relu_op(add(feed, conv2d(h, w2, b2)));
        y = h;
        break;
      }
      case Backbone::kGrcl: {
        // Gated recurrent convolution: a sigmoid gate modulates the
        // recurrent path before it joins the feed-forward response.
        Var feed = conv2d(x, w1, b1);
        Var h = relu_op(feed);
        Var gate = sigmoid_op(conv2d(x, wg, bg));
        h = relu_op(add(feed, mul(gate, conv2d(h, w2, b2))));
        y = h;
        break;
      }
      case Backbone::kResnet: {
        Var f = conv2d(relu_op(conv2d(x, w1, b1)), w2, b2);
        const int c_in = x->value.dim(0), hh = x->value.dim(1), ww = x->value.dim(2);
        const int c_out = f->value.dim(0);
        Var shortcut = x;
        if (proj) {
          shortcut = reshape(matmul(proj, reshape(x, {c_in, hh * ww})), {c_out, hh, ww});
        }
        y = relu_op(add(f, shortcut));
        break;
      }
    }
    return maxpool2d(y, pool_h, pool_w);
  }
};

Var conv_weight(nn::ParamSet& params, const std::string& name, int out_c, int in_c, core::Rng& rng) {
  return params.add(name, nn::xavier_uniform({out_c, in_c, 3, 3}, in_c * 9, out_c * 9, rng));
}

}  // namespace

struct RecognizerModel::Net {
  std::vector<ConvStage> stages;
  nn::BiLstm encoder;
  nn::Linear frame_head;  // CTC: 2h -> K

  // Attention framework.
  nn::Embedding embed;
  nn::LstmCell decoder;
  nn::Linear att_query;  // h -> 2h
  nn::Linear init_state; // 2h -> h
  nn::Linear out_head;   // h + 2h -> vocab
};

RecognizerModel::RecognizerModel(RecognizerConfig config, Alphabet alphabet)
    : config_(config), alphabet_(std::move(alphabet)), net_(std::make_shared<Net>()) {
  core::Rng rng(core::Rng::mix(config_.seed, 0x7265636FULL));  // "reco"
  const int c = config_.conv_channels;
  const int channels[5] = {1, c, 2 * c, 3 * c, 4 * c};
  const int pools[4][2] = {{2, 2}, {2, 2}, {2, 1}, {2, 1}};
  for (int s = 0; s < 4; ++s) {
    ConvStage stage;
    const std::string name = "conv" + std::to_string(s);
    const int in_c = channels[s], out_c = channels[s + 1];
    // First and last stages stay plain convs in every variant; the middle
    // stages carry the variant's characteristic block.
    stage.kind = (s == 0 || s == 3) ? Backbone::kVgg : config_.backbone;
    stage.pool_h = pools[s][0];
    stage.pool_w = pools[s][1];
    stage.w1 = conv_weight(params_, name + ".w1", out_c, in_c, rng);
    stage.b1 = params_.add(name + ".b1", Tensor({out_c}));
    if (stage.kind == Backbone::kRcnn || stage.kind == Backbone::kGrcl ||
        stage.kind == Backbone::kResnet) {
      stage.w2 = conv_weight(params_, name + ".w2", out_c, out_c, rng);
      stage.b2 = params_.add(name + ".b2", Tensor({out_c}));
    }
    if (stage.kind == Backbone::kGrcl) {
      stage.wg = conv_weight(params_, name + ".wg", out_c, in_c, rng);
      stage.bg = params_.add(name + ".bg", Tensor({out_c}));
    }
    if (stage.kind == Backbone::kResnet && in_c != out_c) {
      stage.proj = params_.add(name + ".proj", nn::xavier_uniform({out_c, in_c}, in_c, out_c, rng));
    }
    net_->stages.push_back(stage);
  }

  const int feat = config_.frame_feature_dim();
  net_->encoder = nn::BiLstm(params_, "enc", feat, config_.hidden, rng);
  if (config_.framework == Framework::kCtc) {
    net_->frame_head = nn::Linear(params_, "head", 2 * config_.hidden, alphabet_.size(), rng);
  } else {
    const int ctx = 2 * config_.hidden;
    net_->embed = nn::Embedding(params_, "embed", alphabet_.size_with_markers(),
                                config_.attention_embed, rng);
    net_->decoder = nn::LstmCell(params_, "dec", config_.attention_embed + ctx, config_.hidden, rng);
    net_->att_query = nn::Linear(params_, "attq", config_.hidden, ctx, rng);
    net_->init_state = nn::Linear(params_, "init", ctx, config_.hidden, rng);
    net_->out_head = nn::Linear(params_, "out", config_.hidden + ctx, alphabet_.size_with_markers(), rng);
  }
}

Var RecognizerModel::encode_frames(const core::Image& line) const {
  const core::Image img = normalize_line_image(line, config_.input_width);
  Tensor input({1, img.height, img.width});
  std::copy(img.px.begin(), img.px.end(), input.data());
  Var x = nn::constant(std::move(input));
  for (const ConvStage& stage : net_->stages) x = stage(x);
  Var frames = nn::frames_from_conv(x);
  return net_->encoder(frames);
}

Var RecognizerModel::forward_frames(const core::Image& line) const {
  if (config_.framework != Framework::kCtc) {
    throw ValidationError("forward_frames is only defined for the CTC framework");
  }
  return net_->frame_head(encode_frames(line));
}

FrameDistributionSequence RecognizerModel::frame_distributions(const core::Image& line) const {
  Var logits = forward_frames(line);
  const int t_len = logits->value.rows(), k = logits->value.cols();
  FrameDistributionSequence dist(t_len, k);
  for (int t = 0; t < t_len; ++t) {
    const float* row = logits->value.row(t);
    double m = row[0];
    for (int s = 1; s < k; ++s) m = std::max(m, static_cast<double>(row[s]));
    double sum = 0.0;
    std::vector<double> e(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
      e[static_cast<std::size_t>(s)] = std::exp(static_cast<double>(row[s]) - m);
      sum += e[static_cast<std::size_t>(s)];
    }
    for (int s = 0; s < k; ++s) dist.prob(t, s) = e[static_cast<std::size_t>(s)] / sum;
  }
  return dist;
}

namespace {

struct AttentionStep {
  Var state_h;
  Var state_c;
  Var context;
};

}  // namespace

Var RecognizerModel::loss(const synthgen::TextLineSample& sample) const {
  const LabelSequence target = alphabet_.encode(sample.text);
  if (config_.framework == Framework::kCtc) {
    return ctc_loss(forward_frames(sample.image), target);
  }
  // Teacher-forced attention decoder.
  Var memory = encode_frames(sample.image);
  const int t_len = memory->value.rows();
  Tensor avg_w({1, t_len});
  avg_w.fill(1.0f / static_cast<float>(t_len));
  Var avg = nn::matmul(nn::constant(std::move(avg_w)), memory);
  Var h = nn::tanh_op(net_->init_state(avg));
  Var c = nn::constant(Tensor({1, config_.hidden}));

  std::vector<int> inputs = {alphabet_.start_id()};
  inputs.insert(inputs.end(), target.begin(), target.end());
  std::vector<int> outputs = target;
  outputs.push_back(alphabet_.end_id());

  std::vector<Var> logit_rows;
  logit_rows.reserve(inputs.size());
  for (std::size_t step = 0; step < inputs.size(); ++step) {
    Var scores = nn::matmul(memory, nn::transpose(net_->att_query(h)));  // [T x 1]
    Var attn = nn::softmax_rows(nn::transpose(scores));                  // [1 x T]
    Var context = nn::matmul(attn, memory);                              // [1 x 2h]
    Var emb = net_->embed(std::vector<int>{inputs[step]});
    std::tie(h, c) = net_->decoder.step(nn::concat_cols(emb, context), h, c);
    logit_rows.push_back(net_->out_head(nn::concat_cols(h, context)));
  }
  return nn::cross_entropy_rows(nn::concat_rows(logit_rows), outputs);
}

std::vector<int> RecognizerModel::attention_decode(const core::Image& line,
                                                   std::vector<core::Tensor>* attention_rows) const {
  if (config_.framework != Framework::kAttention) {
    throw ValidationError("attention_decode requires the attention framework");
  }
  Var memory = encode_frames(line);
  const int t_len = memory->value.rows();
  Tensor avg_w({1, t_len});
  avg_w.fill(1.0f / static_cast<float>(t_len));
  Var avg = nn::matmul(nn::constant(std::move(avg_w)), memory);
  Var h = nn::tanh_op(net_->init_state(avg));
  Var c = nn::constant(Tensor({1, config_.hidden}));

  std::vector<int> result;
  int prev = alphabet_.start_id();
  for (int step = 0; step < max_decode_len_; ++step) {
    Var scores = nn::matmul(memory, nn::transpose(net_->att_query(h)));
    Var attn = nn::softmax_rows(nn::transpose(scores));
    if (attention_rows != nullptr) attention_rows->push_back(attn->value);
    Var context = nn::matmul(attn, memory);
    Var emb = net_->embed(std::vector<int>{prev});
    std::tie(h, c) = net_->decoder.step(nn::concat_cols(emb, context), h, c);
    Var logits = net_->out_head(nn::concat_cols(h, context));
    int best = 0;
    for (int k = 1; k < logits->value.cols(); ++k) {
      if (logits->value(0, k) > logits->value(0, best)) best = k;
    }
    if (best == alphabet_.end_id()) break;
    // Blank and start ids cannot be emitted as text; map them to end.
    if (best == Alphabet::kBlank || best == alphabet_.start_id()) break;
    result.push_back(best);
    prev = best;
  }
  return result;
}

std::string RecognizerModel::predict(const core::Image& line, long beam_width) const {
  if (config_.framework == Framework::kAttention) {
    return alphabet_.decode(attention_decode(line, nullptr));
  }
  const FrameDistributionSequence dist = frame_distributions(line);
  const LabelSequence label =
      beam_width <= 1 ? ctc_greedy_decode(dist) : ctc_beam_decode(dist, beam_width);
  return alphabet_.decode(label);
}

void RecognizerModel::save(const std::filesystem::path& path) const {
  nn::Checkpoint ckpt;
  ckpt.header["kind"] = "recognizer";
  ckpt.header["config"] = config_.to_json();
  ckpt.header["alphabet"] = alphabet_.to_json();
  ckpt.header["max_decode_len"] = max_decode_len_;
  ckpt.tensors = nn::snapshot_params(params_);
  nn::save_checkpoint(ckpt, path);
}

RecognizerModel RecognizerModel::load(const std::filesystem::path& path) {
  const nn::Checkpoint ckpt = nn::load_checkpoint(path);
  if (ckpt.header.value("kind", "") != "recognizer") {
    throw ValidationError("checkpoint is not a recognizer model: " + path.string());
  }
  RecognizerModel model(RecognizerConfig::from_json(ckpt.header.at("config")),
                        Alphabet::from_json(ckpt.header.at("alphabet")));
  model.max_decode_len_ = ckpt.header.value("max_decode_len", 64);
  nn::restore_params(model.params_, ckpt.tensors);
  return model;
}

TrainReport train_recognizer(RecognizerModel& model,
                             const std::vector<synthgen::TextLineSample>& dataset) {
  if (dataset.empty()) throw ValidationError("recognizer training set is empty");
  const RecognizerConfig& cfg = model.config();
  for (const auto& sample : dataset) {
    if (sample.text.empty()) throw ValidationError("training sample with empty text");
  }

  auto optimizer = nn::make_optimizer(cfg.optimizer, cfg.lr, cfg.grad_clip);
  TrainReport report;
  int longest_target = 1;
  for (const auto& sample : dataset) {
    longest_target =
        std::max(longest_target, static_cast<int>(core::utf8_decode(sample.text).size()));
  }
  model.set_max_decode_len(2 * longest_target);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);

  const float inv_batch = 1.0f / static_cast<float>(cfg.batch_size);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    core::Rng shuffle_rng(core::Rng::mix(cfg.seed, 0x1000 + static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    double epoch_loss = 0.0;
    int counted = 0;
    int in_batch = 0;
    for (std::size_t idx : order) {
      nn::Var sample_loss;
      try {
        sample_loss = model.loss(dataset[idx]);
      } catch (const DomainError& e) {
        if (cfg.error_on_unreachable) {
          throw DomainError(std::string(e.what()) + " (sample '" + dataset[idx].text + "')");
        }
        if (epoch == 0) {
          std::cerr << "warning: skipping sample '" << dataset[idx].text << "': " << e.what() << "\n";
        }
        ++report.skipped_samples;
        continue;
      }
      epoch_loss += sample_loss->value[0];
      ++counted;
      nn::backward(nn::scale(sample_loss, inv_batch));
      if (++in_batch == cfg.batch_size) {
        optimizer->step(model.params());
        in_batch = 0;
      }
    }
    if (in_batch > 0) optimizer->step(model.params());
    report.epoch_loss.push_back(counted > 0 ? static_cast<float>(epoch_loss / counted) : 0.0f);
    report.epochs_run = epoch + 1;

    if (cfg.early_stop_wra > 0.0) {
      std::vector<std::string> preds, refs;
      preds.reserve(dataset.size());
      refs.reserve(dataset.size());
      for (const auto& sample : dataset) {
        preds.push_back(model.predict(sample.image));
        refs.push_back(sample.text);
      }
      if (word_recognition_accuracy(preds, refs) >= cfg.early_stop_wra) break;
    }
  }
  return report;
}

double word_recognition_accuracy(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& references, bool token_level) {
  if (predictions.size() != references.size()) {
    throw ValidationError("prediction/reference counts differ");
  }
  if (references.empty()) return 0.0;
  if (!token_level) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < references.size(); ++i) {
      if (predictions[i] == references[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(references.size());
  }
  std::size_t matched = 0, total = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    const auto pred_tokens = core::split_whitespace(predictions[i]);
    const auto ref_tokens = core::split_whitespace(references[i]);
    total += ref_tokens.size();
    for (std::size_t t = 0; t < ref_tokens.size() && t < pred_tokens.size(); ++t) {
      if (pred_tokens[t] == ref_tokens[t]) ++matched;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

}  // namespace signaddr::recognizer
