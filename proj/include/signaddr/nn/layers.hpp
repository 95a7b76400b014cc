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

#include <string>
#include <utility>
#include <vector>

#include "signaddr/core/rng.hpp"
#include "signaddr/nn/ops.hpp"

namespace signaddr::nn {

/// Named trainable leaves of a model, in registration order. The order is
/// part of the checkpoint contract.
class ParamSet {
 public:
  Var add(const std::string& name, Tensor init);
  void zero_grad();
  const std::vector<std::pair<std::string, Var>>& items() const { return items_; }
  Var find(const std::string& name) const;
  std::size_t total_size() const;

 private:
  std::vector<std::pair<std::string, Var>> items_;
};

Tensor xavier_uniform(const std::vector<int>& shape, int fan_in, int fan_out, core::Rng& rng);
Tensor uniform_init(const std::vector<int>& shape, float lo, float hi, core::Rng& rng);

struct Linear {
  Var weight;  // [in x out]
  Var bias;    // [1 x out]
  Linear() = default;
  Linear(ParamSet& params, const std::string& name, int in, int out, core::Rng& rng);
  Var operator()(const Var& x) const { return add_rowvec(matmul(x, weight), bias); }
};

struct Embedding {
  Var table;  // [vocab x dim]
  Embedding() = default;
  Embedding(ParamSet& params, const std::string& name, int vocab, int dim, core::Rng& rng);
  Var operator()(const std::vector<int>& ids) const { return embedding_rows(table, ids); }
};

struct LayerNorm {
  Var gain;
  Var bias;
  LayerNorm() = default;
  LayerNorm(ParamSet& params, const std::string& name, int dim);
  Var operator()(const Var& x) const { return layer_norm_rows(x, gain, bias); }
};

/// Vanilla recurrent cell: h' = tanh(x Wx + h Wh + b).
struct RnnCell {
  Linear input;   // in -> hidden (carries the bias)
  Var recurrent;  // [hidden x hidden]
  int hidden = 0;
  RnnCell() = default;
  RnnCell(ParamSet& params, const std::string& name, int in, int hidden, core::Rng& rng);
  Var step(const Var& x, const Var& h) const;
  Var initial_state() const { return constant(Tensor({1, hidden})); }
};

/// LSTM cell with gate order [input, forget, cell, output].
struct LstmCell {
  Linear input;   // in -> 4*hidden
  Var recurrent;  // [hidden x 4*hidden]
  int hidden = 0;
  LstmCell() = default;
  LstmCell(ParamSet& params, const std::string& name, int in, int hidden, core::Rng& rng);
  std::pair<Var, Var> step(const Var& x, const Var& h, const Var& c) const;
  std::pair<Var, Var> initial_state() const {
    return {constant(Tensor({1, hidden})), constant(Tensor({1, hidden}))};
  }
};

/// Runs a cell over the rows of a [T x in] matrix; returns [T x hidden].
Var run_lstm(const LstmCell& cell, const Var& inputs);
Var run_lstm_reverse(const LstmCell& cell, const Var& inputs);
Var run_rnn(const RnnCell& cell, const Var& inputs);

/// Forward and backward LSTM passes concatenated: [T x 2*hidden].
struct BiLstm {
  LstmCell fwd;
  LstmCell bwd;
  BiLstm() = default;
  BiLstm(ParamSet& params, const std::string& name, int in, int hidden, core::Rng& rng);
  Var operator()(const Var& inputs) const {
    return concat_cols(run_lstm(fwd, inputs), run_lstm_reverse(bwd, inputs));
  }
};

/// Multi-head scaled dot-product attention. `mask`, when present, is added to
/// the pre-softmax scores (0 for allowed, large negative for blocked).
struct MultiHeadAttention {
  Linear wq, wk, wv, wo;
  int heads = 0;
  int dim = 0;
  // Per-head attention rows from the latest forward, for inspection/tests.
  mutable std::vector<Tensor> last_attention;
  MultiHeadAttention() = default;
  MultiHeadAttention(ParamSet& params, const std::string& name, int dim, int heads, core::Rng& rng);
  Var operator()(const Var& query, const Var& memory, const Tensor* mask) const;
};

struct TransformerEncoderLayer {
  MultiHeadAttention self_attn;
  Linear ff1, ff2;
  LayerNorm ln1, ln2;
  TransformerEncoderLayer() = default;
  TransformerEncoderLayer(ParamSet& params, const std::string& name, int dim, int heads, int ff_dim,
                          core::Rng& rng);
  Var operator()(const Var& x) const;
};

struct TransformerDecoderLayer {
  MultiHeadAttention self_attn;
  MultiHeadAttention cross_attn;
  Linear ff1, ff2;
  LayerNorm ln1, ln2, ln3;
  TransformerDecoderLayer() = default;
  TransformerDecoderLayer(ParamSet& params, const std::string& name, int dim, int heads, int ff_dim,
                          core::Rng& rng);
  Var operator()(const Var& x, const Var& memory, const Tensor& causal_mask) const;
};

/// Fixed sinusoidal positional encodings, rows 0..max_len-1.
Tensor sinusoidal_positions(int max_len, int dim);

/// [n x n] matrix with 0 on/below the diagonal and a large negative above.
Tensor causal_mask(int n);

}  // namespace signaddr::nn
