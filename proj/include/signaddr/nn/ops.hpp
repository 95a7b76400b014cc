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

#include <vector>

#include "signaddr/nn/graph.hpp"

namespace signaddr::nn {

Var constant(Tensor v);

// Matrix / elementwise algebra. Shapes are validated; rank-2 unless noted.
Var matmul(const Var& a, const Var& b);
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var add_rowvec(const Var& a, const Var& bias);  // bias [1 x n] broadcast over rows
Var scale(const Var& a, float k);

Var tanh_op(const Var& a);
Var sigmoid_op(const Var& a);
Var relu_op(const Var& a);

Var softmax_rows(const Var& a);
/// Mean over rows of -log softmax(logits)[i, target[i]].
Var cross_entropy_rows(const Var& logits, const std::vector<int>& targets);

Var concat_cols(const Var& a, const Var& b);
Var concat_rows(const std::vector<Var>& parts);
Var slice_cols(const Var& a, int c0, int c1);
Var slice_rows(const Var& a, int r0, int r1);
Var transpose(const Var& a);
Var reshape(const Var& a, std::vector<int> shape);

/// Gathers rows of a [V x d] table; grads scatter-add back.
Var embedding_rows(const Var& table, const std::vector<int>& ids);

Var layer_norm_rows(const Var& x, const Var& gain, const Var& bias, float eps = 1e-5f);

Var sum_all(const Var& a);
Var mean_all(const Var& a);

// Convolution stack primitives. x is rank-3 (C, H, W); w rank-4 (OC, IC, KH, KW).
Var conv2d(const Var& x, const Var& w, const Var& b);  // stride 1, same padding
Var maxpool2d(const Var& x, int pool_h, int pool_w);
/// (C, H, W) -> [W x C*H]: one feature row per image column, left to right.
Var frames_from_conv(const Var& x);

}  // namespace signaddr::nn
