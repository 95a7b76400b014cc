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

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "signaddr/core/error.hpp"

namespace signaddr::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend;
  const detail::OpTable* ops;
};

Dispatch resolve_initial() {
  const char* env = std::getenv("SIGNADDR_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return {Backend::kScalar, &detail::scalar_table()};
    if (std::strcmp(env, "avx2") == 0) {
      if (const detail::OpTable* t = detail::avx2_table(); t != nullptr && cpu_has_avx2_fma()) {
        return {Backend::kAvx2, t};
      }
      // Requested ISA unavailable: fall through to auto pick.
    }
  }
  if (const detail::OpTable* t = detail::avx2_table(); t != nullptr && cpu_has_avx2_fma()) {
    return {Backend::kAvx2, t};
  }
  return {Backend::kScalar, &detail::scalar_table()};
}

Dispatch& dispatch() {
  static Dispatch d = resolve_initial();
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_supported(Backend b) {
  if (b == Backend::kScalar) return true;
  return detail::avx2_table() != nullptr && cpu_has_avx2_fma();
}

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw ValidationError(std::string("kernel backend unavailable: ") + backend_name(b));
  }
  dispatch() = {b, b == Backend::kScalar ? &detail::scalar_table() : detail::avx2_table()};
}

const char* backend_name(Backend b) { return b == Backend::kScalar ? "scalar" : "avx2"; }

float dot(const float* a, const float* b, int n) { return dispatch().ops->dot(a, b, n); }
void axpy(float alpha, const float* x, float* y, int n) { dispatch().ops->axpy(alpha, x, y, n); }
void vadd(const float* a, const float* b, float* out, int n) { dispatch().ops->vadd(a, b, out, n); }
void vsub(const float* a, const float* b, float* out, int n) { dispatch().ops->vsub(a, b, out, n); }
void vmul(const float* a, const float* b, float* out, int n) { dispatch().ops->vmul(a, b, out, n); }
void vscale(const float* a, float k, float* out, int n) { dispatch().ops->vscale(a, k, out, n); }
float vsum(const float* a, int n) { return dispatch().ops->vsum(a, n); }
float vmax(const float* a, int n) { return dispatch().ops->vmax(a, n); }
void vrelu(const float* a, float* out, int n) { dispatch().ops->vrelu(a, out, n); }
void vmuladd(const float* a, const float* b, float* out, int n) { dispatch().ops->vmuladd(a, b, out, n); }

void vexp(const float* a, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = std::exp(a[i]);
}

void vtanh(const float* a, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = std::tanh(a[i]);
}

void vsigmoid(const float* a, float* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = 1.0f / (1.0f + std::exp(-a[i]));
}

void softmax(const float* x, float* out, int n) {
  const float m = vmax(x, n);
  float sum = 0.0f;
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(x[i] - m);
    sum += out[i];
  }
  vscale(out, 1.0f / sum, out, n);
}

void gemm_nn(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate) {
  if (!accumulate) std::memset(c, 0, sizeof(float) * static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    const float* arow = a + static_cast<std::size_t>(i) * k;
    float* crow = c + static_cast<std::size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      axpy(arow[p], b + static_cast<std::size_t>(p) * n, crow, n);
    }
  }
}

void gemm_nt(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate) {
  for (int i = 0; i < m; ++i) {
    const float* arow = a + static_cast<std::size_t>(i) * k;
    float* crow = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const float v = dot(arow, b + static_cast<std::size_t>(j) * k, k);
      crow[j] = accumulate ? crow[j] + v : v;
    }
  }
}

void gemm_tn(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate) {
  if (!accumulate) std::memset(c, 0, sizeof(float) * static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int p = 0; p < k; ++p) {
    const float* arow = a + static_cast<std::size_t>(p) * m;
    const float* brow = b + static_cast<std::size_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      axpy(arow[i], brow, c + static_cast<std::size_t>(i) * n, n);
    }
  }
}

}  // namespace signaddr::kernels
