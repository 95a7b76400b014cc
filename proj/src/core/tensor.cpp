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

#include "signaddr/core/tensor.hpp"

#include <algorithm>

#include "signaddr/core/error.hpp"

namespace signaddr::core {

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  std::size_t n = 1;
  for (int d : shape_) {
    if (d <= 0) throw ValidationError("tensor dimensions must be positive");
    n *= static_cast<std::size_t>(d);
  }
  data_.assign(n, 0.0f);
}

Tensor Tensor::scalar(float v) {
  Tensor t({1});
  t.data_[0] = v;
  return t;
}

void Tensor::fill(float v) { std::fill(data_.begin(), data_.end(), v); }

}  // namespace signaddr::core
