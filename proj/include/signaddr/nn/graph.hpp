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

#include <functional>
#include <memory>
#include <vector>

#include "signaddr/core/tensor.hpp"

namespace signaddr::nn {

using core::Tensor;

/// One node of a define-by-run tape. Graphs are rebuilt per forward pass;
/// parameters are long-lived leaves whose grads accumulate until the
/// optimizer steps and zeroes them.
struct Node {
  Tensor value;
  Tensor grad;  // allocated on first accumulation
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node&)> backward_fn;
  bool requires_grad = false;

  Tensor& grad_buffer() {
    if (grad.empty()) grad = Tensor::zeros_like(value);
    return grad;
  }
};

using Var = std::shared_ptr<Node>;

Var make_leaf(Tensor value, bool requires_grad = false);
Var make_node(Tensor value, std::vector<Var> inputs, std::function<void(Node&)> backward_fn);

/// Reverse-mode sweep from a scalar root. Seeds d(root)/d(root) = 1.
void backward(const Var& root);

}  // namespace signaddr::nn
