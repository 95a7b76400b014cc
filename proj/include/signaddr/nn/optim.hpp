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

#include <memory>
#include <string>
#include <vector>

#include "signaddr/nn/layers.hpp"

namespace signaddr::nn {

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// Applies accumulated gradients and zeroes them.
  virtual void step(ParamSet& params) = 0;
};

/// Scales all gradients so their global L2 norm is at most max_norm.
void clip_global_norm(ParamSet& params, float max_norm);

struct AdadeltaOptions {
  float lr = 1.0f;
  float rho = 0.95f;
  float eps = 1e-8f;
  float grad_clip = 5.0f;  // <= 0 disables
};

class Adadelta : public Optimizer {
 public:
  explicit Adadelta(AdadeltaOptions opts) : opts_(opts) {}
  void step(ParamSet& params) override;

 private:
  AdadeltaOptions opts_;
  std::vector<Tensor> accum_grad_;
  std::vector<Tensor> accum_update_;
};

struct AdamWOptions {
  float lr = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float eps = 1e-8f;
  float weight_decay = 0.0f;
  int warmup_steps = 0;  // linear warmup of the learning rate
  float grad_clip = 5.0f;
};

class AdamW : public Optimizer {
 public:
  explicit AdamW(AdamWOptions opts) : opts_(opts) {}
  void step(ParamSet& params) override;

 private:
  AdamWOptions opts_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  long t_ = 0;
};

/// Builds an optimizer from a config name ("adadelta" or "adamw").
std::unique_ptr<Optimizer> make_optimizer(const std::string& family, float lr, float grad_clip,
                                          float weight_decay = 0.0f, int warmup_steps = 0);

}  // namespace signaddr::nn
