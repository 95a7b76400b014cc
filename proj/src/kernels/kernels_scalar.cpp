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

#include "signaddr/kernels/kernels.hpp"

#include <algorithm>

namespace signaddr::kernels::detail {

namespace {

float dot_scalar(const float* a, const float* b, int n) {
  float acc = 0.0f;
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(float alpha, const float* x, float* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void vadd_scalar(const float* a, const float* b, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void vsub_scalar(const float* a, const float* b, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void vmul_scalar(const float* a, const float* b, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vscale_scalar(const float* a, float k, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] * k;
}

float vsum_scalar(const float* a, int n) {
  float acc = 0.0f;
  for (int i = 0; i < n; ++i) acc += a[i];
  return acc;
}

float vmax_scalar(const float* a, int n) {
  float m = a[0];
  for (int i = 1; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

void vrelu_scalar(const float* a, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] > 0.0f ? a[i] : 0.0f;
}

void vmuladd_scalar(const float* a, const float* b, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

}  // namespace

const OpTable& scalar_table() {
  static const OpTable table = {
      dot_scalar, axpy_scalar, vadd_scalar, vsub_scalar, vmul_scalar,
      vscale_scalar, vsum_scalar, vmax_scalar, vrelu_scalar, vmuladd_scalar,
  };
  return table;
}

}  // namespace signaddr::kernels::detail
