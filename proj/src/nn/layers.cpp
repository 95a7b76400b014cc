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

#include "signaddr/nn/layers.hpp"

#include <cmath>

#include "signaddr/core/error.hpp"

namespace signaddr::nn {

Var ParamSet::add(const std::string& name, Tensor init) {
  for (const auto& [existing, var] : items_) {
    if (existing == name) throw ValidationError("duplicate parameter name: " + name);
  }
  Var v = make_leaf(std::move(init), true);
  items_.emplace_back(name, v);
  return v;
}

void ParamSet::zero_grad() {
  for (auto& [name, var] : items_) {
    if (!var->grad.empty()) var->grad.fill(0.0f);
  }
}

Var ParamSet::find(const std::string& name) const {
  for (const auto& [existing, var] : items_) {
    if (existing == name) return var;
  }
  throw ValidationError("unknown parameter: " + name);
}

std::size_t ParamSet::total_size() const {
  std::size_t n = 0;
  for (const auto& [name, var] : items_) n += var->value.size();
  return n;
}

Tensor xavier_uniform(const std::vector<int>& shape, int fan_in, int fan_out, core::Rng& rng) {
  Tensor t(shape);
  const float bound = std::sqrt(6.0f / static_cast<float>(fan_in + fan_out));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<float>(rng.uniform(-bound, bound));
  }
  return t;
}

Tensor uniform_init(const std::vector<int>& shape, float lo, float hi, core::Rng& rng) {
  Tensor t(shape);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<float>(rng.uniform(lo, hi));
  return t;
}

Linear::Linear(ParamSet& params, const std::string& name, int in, int out, core::Rng& rng) {
  weight = params.add(name + ".weight", xavier_uniform({in, out}, in, out, rng));
  bias = params.add(name + ".bias", Tensor({1, out}));
}

Embedding::Embedding(ParamSet& params, const std::string& name, int vocab, int dim, core::Rng& rng) {
  table = params.add(name + ".table", uniform_init({vocab, dim}, -0.1f, 0.1f, rng));
}

LayerNorm::LayerNorm(ParamSet& params, const std::string& name, int dim) {
  Tensor ones({1, dim});
  ones.fill(1.0f);
  gain = params.add(name + ".gain", std::move(ones));
  bias = params.add(name + ".bias", Tensor({1, dim}));
}

RnnCell::RnnCell(ParamSet& params, const std::string& name, int in, int hidden_dim, core::Rng& rng)
    : input(params, name + ".in", in, hidden_dim, rng), hidden(hidden_dim) {
  recurrent = params.add(name + ".rec", xavier_uniform({hidden_dim, hidden_dim}, hidden_dim, hidden_dim, rng));
}

Var RnnCell::step(const Var& x, const Var& h) const {
  return tanh_op(add(input(x), matmul(h, recurrent)));
}

LstmCell::LstmCell(ParamSet& params, const std::string& name, int in, int hidden_dim, core::Rng& rng)
    : input(params, name + ".in", in, 4 * hidden_dim, rng), hidden(hidden_dim) {
  recurrent =
      params.add(name + ".rec", xavier_uniform({hidden_dim, 4 * hidden_dim}, hidden_dim, 4 * hidden_dim, rng));
  // Forget-gate bias starts at 1 so early training does not erase state.
  for (int j = hidden_dim; j < 2 * hidden_dim; ++j) input.bias->value(0, j) = 1.0f;
}

std::pair<Var, Var> LstmCell::step(const Var& x, const Var& h, const Var& c) const {
  Var z = add(input(x), matmul(h, recurrent));
  Var gi = sigmoid_op(slice_cols(z, 0, hidden));
  Var gf = sigmoid_op(slice_cols(z, hidden, 2 * hidden));
  Var gc = tanh_op(slice_cols(z, 2 * hidden, 3 * hidden));
  Var go = sigmoid_op(slice_cols(z, 3 * hidden, 4 * hidden));
  Var c_next = add(mul(gf, c), mul(gi, gc));
  Var h_next = mul(go, tanh_op(c_next));
  return {h_next, c_next};
}

Var run_lstm(const LstmCell& cell, const Var& inputs) {
  const int t_len = inputs->value.rows();
  auto [h, c] = cell.initial_state();
  std::vector<Var> outputs;
  outputs.reserve(static_cast<std::size_t>(t_len));
  for (int t = 0; t < t_len; ++t) {
    std::tie(h, c) = cell.step(slice_rows(inputs, t, t + 1), h, c);
    outputs.push_back(h);
  }
  return concat_rows(outputs);
}

Var run_lstm_reverse(const LstmCell& cell, const Var& inputs) {
  const int t_len = inputs->value.rows();
  auto [h, c] = cell.initial_state();
  std::vector<Var> outputs(static_cast<std::size_t>(t_len));
  for (int t = t_len - 1; t >= 0; --t) {
    std::tie(h, c) = cell.step(slice_rows(inputs, t, t + 1), h, c);
    outputs[static_cast<std::size_t>(t)] = h;
  }
  return concat_rows(outputs);
}

Var run_rnn(const RnnCell& cell, const Var& inputs) {
  const int t_len = inputs->value.rows();
  Var h = cell.initial_state();
  std::vector<Var> outputs;
  outputs.reserve(static_cast<std::size_t>(t_len));
  for (int t = 0; t < t_len; ++t) {
    h = cell.step(slice_rows(inputs, t, t + 1), h);
    outputs.push_back(h);
  }
  return concat_rows(outputs);
}

BiLstm::BiLstm(ParamSet& params, const std::string& name, int in, int hidden, core::Rng& rng)
    : fwd(params, name + ".fwd", in, hidden, rng), bwd(params, name + ".bwd", in, hidden, rng) {}

MultiHeadAttention::MultiHeadAttention(ParamSet& params, const std::string& name, int dim_, int heads_,
                                       core::Rng& rng)
    : wq(params, name + ".q", dim_, dim_, rng),
      wk(params, name + ".k", dim_, dim_, rng),
      wv(params, name + ".v", dim_, dim_, rng),
      wo(params, name + ".o", dim_, dim_, rng),
      heads(heads_),
      dim(dim_) {
  if (dim_ % heads_ != 0) throw ValidationError("attention width must divide by head count");
}

Var MultiHeadAttention::operator()(const Var& query, const Var& memory, const Tensor* mask) const {
  const int dk = dim / heads;
  const float scale_factor = 1.0f / std::sqrt(static_cast<float>(dk));
  Var q = wq(query);
  Var k = wk(memory);
  Var v = wv(memory);
  last_attention.clear();
  std::vector<Var> head_outputs;
  head_outputs.reserve(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    Var qh = slice_cols(q, h * dk, (h + 1) * dk);
    Var kh = slice_cols(k, h * dk, (h + 1) * dk);
    Var vh = slice_cols(v, h * dk, (h + 1) * dk);
    Var scores = scale(matmul(qh, transpose(kh)), scale_factor);
    if (mask != nullptr) scores = add(scores, constant(*mask));
    Var attn = softmax_rows(scores);
    last_attention.push_back(attn->value);
    head_outputs.push_back(matmul(attn, vh));
  }
  Var merged = head_outputs[0];
  for (std::size_t h = 1; h < head_outputs.size(); ++h) merged = concat_cols(merged, head_outputs[h]);
  return wo(merged);
}

TransformerEncoderLayer::TransformerEncoderLayer(ParamSet& params, const std::string& name, int dim,
                                                 int heads, int ff_dim, core::Rng& rng)
    : self_attn(params, name + ".attn", dim, heads, rng),
      ff1(params, name + ".ff1", dim, ff_dim, rng),
      ff2(params, name + ".ff2", ff_dim, dim, rng),
      ln1(params, name + ".ln1", dim),
      ln2(params, name + ".ln2", dim) {}

Var TransformerEncoderLayer::operator()(const Var& x) const {
  Var a = ln1(add(x, self_attn(x, x, nullptr)));
  return ln2(add(a, ff2(relu_op(ff1(a)))));
}

TransformerDecoderLayer::TransformerDecoderLayer(ParamSet& params, const std::string& name, int dim,
                                                 int heads, int ff_dim, core::Rng& rng)
    : self_attn(params, name + ".self", dim, heads, rng),
      cross_attn(params, name + ".cross", dim, heads, rng),
      ff1(params, name + ".ff1", dim, ff_dim, rng),
      ff2(params, name + ".ff2", ff_dim, dim, rng),
      ln1(params, name + ".ln1", dim),
      ln2(params, name + ".ln2", dim),
      ln3(params, name + ".ln3", dim) {}

Var TransformerDecoderLayer::operator()(const Var& x, const Var& memory, const Tensor& mask) const {
  Var a = ln1(add(x, self_attn(x, x, &mask)));
  Var b = ln2(add(a, cross_attn(a, memory, nullptr)));
  return ln3(add(b, ff2(relu_op(ff1(b)))));
}

Tensor sinusoidal_positions(int max_len, int dim) {
  Tensor table({max_len, dim});
  for (int pos = 0; pos < max_len; ++pos) {
    for (int i = 0; i < dim; ++i) {
      const double rate = std::pow(10000.0, -2.0 * static_cast<double>(i / 2) / static_cast<double>(dim));
      const double angle = static_cast<double>(pos) * rate;
      table(pos, i) = static_cast<float>((i % 2 == 0) ? std::sin(angle) : std::cos(angle));
    }
  }
  return table;
}

Tensor causal_mask(int n) {
  Tensor mask({n, n});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) mask(i, j) = -1e30f;
  }
  return mask;
}

}  // namespace signaddr::nn
