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

#include "signaddr/nn/optim.hpp"

#include <cmath>

#include "signaddr/core/error.hpp"
#include "signaddr/kernels/kernels.hpp"

namespace signaddr::nn {

void clip_global_norm(ParamSet& params, float max_norm) {
  double sq = 0.0;
  for (const auto& [name, var] : params.items()) {
    if (var->grad.empty()) continue;
    const float* g = var->grad.data();
    sq += static_cast<double>(kernels::dot(g, g, static_cast<int>(var->grad.size())));
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const float factor = static_cast<float>(max_norm / norm);
  for (auto& [name, var] : params.items()) {
    if (var->grad.empty()) continue;
    kernels::vscale(var->grad.data(), factor, const_cast<float*>(var->grad.data()),
                    static_cast<int>(var->grad.size()));
  }
}

void Adadelta::step(ParamSet& params) {
  if (accum_grad_.empty()) {
    for (const auto& [name, var] : params.items()) {
      accum_grad_.push_back(Tensor::zeros_like(var->value));
      accum_update_.push_back(Tensor::zeros_like(var->value));
    }
  }
  if (opts_.grad_clip > 0.0f) clip_global_norm(params, opts_.grad_clip);
  std::size_t idx = 0;
  for (auto& [name, var] : params.items()) {
    Tensor& eg = accum_grad_[idx];
    Tensor& ex = accum_update_[idx];
    ++idx;
    if (var->grad.empty()) continue;
    float* w = var->value.data();
    float* g = var->grad.data();
    for (std::size_t i = 0; i < var->value.size(); ++i) {
      eg[i] = opts_.rho * eg[i] + (1.0f - opts_.rho) * g[i] * g[i];
      const float update = -std::sqrt(ex[i] + opts_.eps) / std::sqrt(eg[i] + opts_.eps) * g[i];
      ex[i] = opts_.rho * ex[i] + (1.0f - opts_.rho) * update * update;
      w[i] += opts_.lr * update;
    }
  }
  params.zero_grad();
}

void AdamW::step(ParamSet& params) {
  if (m_.empty()) {
    for (const auto& [name, var] : params.items()) {
      m_.push_back(Tensor::zeros_like(var->value));
      v_.push_back(Tensor::zeros_like(var->value));
    }
  }
  if (opts_.grad_clip > 0.0f) clip_global_norm(params, opts_.grad_clip);
  ++t_;
  float lr = opts_.lr;
  if (opts_.warmup_steps > 0 && t_ < opts_.warmup_steps) {
    lr *= static_cast<float>(t_) / static_cast<float>(opts_.warmup_steps);
  }
  const float bc1 = 1.0f - std::pow(opts_.beta1, static_cast<float>(t_));
  const float bc2 = 1.0f - std::pow(opts_.beta2, static_cast<float>(t_));
  std::size_t idx = 0;
  for (auto& [name, var] : params.items()) {
    Tensor& m = m_[idx];
    Tensor& v = v_[idx];
    ++idx;
    if (var->grad.empty()) continue;
    float* w = var->value.data();
    float* g = var->grad.data();
    for (std::size_t i = 0; i < var->value.size(); ++i) {
      m[i] = opts_.beta1 * m[i] + (1.0f - opts_.beta1) * g[i];
      v[i] = opts_.beta2 * v[i] + (1.0f - opts_.beta2) * g[i] * g[i];
      const float mhat = m[i] / bc1;
      const float vhat = v[i] / bc2;
      w[i] -= lr * (mhat / (std::sqrt(vhat) + opts_.eps) + opts_.weight_decay * w[i]);
    }
  }
  params.zero_grad();
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& family, float lr, float grad_clip,
                                          float weight_decay, int warmup_steps) {
  if (family == "adadelta") {
    AdadeltaOptions o;
    o.lr = lr;
    o.grad_clip = grad_clip;
    return std::make_unique<Adadelta>(o);
  }
  if (family == "adamw" || family == "adam") {
    AdamWOptions o;
    o.lr = lr;
    o.grad_clip = grad_clip;
    o.weight_decay = weight_decay;
    o.warmup_steps = warmup_steps;
    return std::make_unique<AdamW>(o);
  }
  throw ValidationError("unknown optimizer family: " + family);
}

}  // namespace signaddr::nn
