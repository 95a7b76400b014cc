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

namespace signaddr::kernels {

/// The arithmetic inner loops behind every model in this project. Each kernel
/// has a scalar reference implementation and, on x86-64 with AVX2+FMA, a
/// vectorized variant selected once at startup. `SIGNADDR_KERNELS=scalar`
/// (or `avx2`) in the environment overrides the automatic pick.
///
/// Transcendentals (exp/tanh/sigmoid) intentionally share one scalar libm
/// path on every backend so model outputs do not drift with the dispatch.
enum class Backend { kScalar, kAvx2 };

Backend active_backend();
bool backend_supported(Backend b);
void set_backend(Backend b);  // throws ValidationError if unsupported
const char* backend_name(Backend b);

float dot(const float* a, const float* b, int n);
/// y[i] += alpha * x[i]
void axpy(float alpha, const float* x, float* y, int n);
void vadd(const float* a, const float* b, float* out, int n);
void vsub(const float* a, const float* b, float* out, int n);
void vmul(const float* a, const float* b, float* out, int n);
void vscale(const float* a, float k, float* out, int n);
float vsum(const float* a, int n);
float vmax(const float* a, int n);
void vrelu(const float* a, float* out, int n);
/// out[i] += a[i] * b[i]
void vmuladd(const float* a, const float* b, float* out, int n);

void vexp(const float* a, float* out, int n);
void vtanh(const float* a, float* out, int n);
void vsigmoid(const float* a, float* out, int n);
/// Numerically stable softmax over one row.
void softmax(const float* x, float* out, int n);

/// C[m x n] = A[m x k] * B[k x n]; accumulate adds into C instead.
void gemm_nn(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate);
/// C[m x n] = A[m x k] * B^T, with B stored [n x k].
void gemm_nt(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate);
/// C[m x n] = A^T * B, with A stored [k x m].
void gemm_tn(const float* a, const float* b, float* c, int m, int k, int n, bool accumulate);

namespace detail {
struct OpTable {
  float (*dot)(const float*, const float*, int);
  void (*axpy)(float, const float*, float*, int);
  void (*vadd)(const float*, const float*, float*, int);
  void (*vsub)(const float*, const float*, float*, int);
  void (*vmul)(const float*, const float*, float*, int);
  void (*vscale)(const float*, float, float*, int);
  float (*vsum)(const float*, int);
  float (*vmax)(const float*, int);
  void (*vrelu)(const float*, float*, int);
  void (*vmuladd)(const float*, const float*, float*, int);
};
const OpTable& scalar_table();
const OpTable* avx2_table();  // nullptr when not compiled in or unsupported
}  // namespace detail

}  // namespace signaddr::kernels
