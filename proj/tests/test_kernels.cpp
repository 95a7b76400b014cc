#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "signaddr/core/rng.hpp"
#include "signaddr/kernels/kernels.hpp"

namespace ks = signaddr::kernels;
using signaddr::core::Rng;

namespace {

std::vector<float> random_vec(Rng& rng, int n, float scale = 1.0f) {
  std::vector<float> v(static_cast<std::size_t>(n));
  for (float& x : v) x = static_cast<float>(rng.uniform(-scale, scale));
  return v;
}

// Sizes straddling the 8-lane width, including remainders.
const std::vector<int> kSizes = {1, 2, 3, 7, 8, 9, 15, 16, 17, 31, 64, 100, 1000};

struct BackendGuard {
  ks::Backend saved;
  BackendGuard() : saved(ks::active_backend()) {}
  ~BackendGuard() { ks::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  if (!ks::backend_supported(ks::Backend::kAvx2)) {
    MESSAGE("AVX2 unavailable; dispatch stays on scalar");
    return;
  }
  BackendGuard guard;
  Rng rng(42);
  for (int n : kSizes) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);

    ks::set_backend(ks::Backend::kScalar);
    const float dot_s = ks::dot(a.data(), b.data(), n);
    const float sum_s = ks::vsum(a.data(), n);
    const float max_s = ks::vmax(a.data(), n);
    std::vector<float> add_s(a.size()), mul_s(a.size()), relu_s(a.size()), axpy_s = b, fma_s = b;
    ks::vadd(a.data(), b.data(), add_s.data(), n);
    ks::vmul(a.data(), b.data(), mul_s.data(), n);
    ks::vrelu(a.data(), relu_s.data(), n);
    ks::axpy(0.37f, a.data(), axpy_s.data(), n);
    ks::vmuladd(a.data(), b.data(), fma_s.data(), n);

    ks::set_backend(ks::Backend::kAvx2);
    const float dot_v = ks::dot(a.data(), b.data(), n);
    const float sum_v = ks::vsum(a.data(), n);
    const float max_v = ks::vmax(a.data(), n);
    std::vector<float> add_v(a.size()), mul_v(a.size()), relu_v(a.size()), axpy_v = b, fma_v = b;
    ks::vadd(a.data(), b.data(), add_v.data(), n);
    ks::vmul(a.data(), b.data(), mul_v.data(), n);
    ks::vrelu(a.data(), relu_v.data(), n);
    ks::axpy(0.37f, a.data(), axpy_v.data(), n);
    ks::vmuladd(a.data(), b.data(), fma_v.data(), n);

    // Reductions and fused ops may differ by association/rounding only.
    const float tol = 1e-5f * static_cast<float>(n);
    CHECK(std::abs(dot_s - dot_v) <= tol);
    CHECK(std::abs(sum_s - sum_v) <= tol);
    CHECK(max_s == max_v);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(add_s[i] == add_v[i]);
      CHECK(mul_s[i] == mul_v[i]);
      CHECK(relu_s[i] == relu_v[i]);
      CHECK(std::abs(axpy_s[i] - axpy_v[i]) <= 1e-6f);
      CHECK(std::abs(fma_s[i] - fma_v[i]) <= 1e-6f);
    }
  }
}

TEST_CASE("gemm variants agree across backends and match a naive product") {
  Rng rng(7);
  const int m = 5, k = 9, n = 13;
  const auto a = random_vec(rng, m * k);
  const auto b = random_vec(rng, k * n);

  // Naive triple loop as the reference.
  std::vector<float> expected(static_cast<std::size_t>(m) * n, 0.0f);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += static_cast<double>(a[i * k + p]) * b[p * n + j];
      expected[static_cast<std::size_t>(i) * n + j] = static_cast<float>(acc);
    }
  }

  // B^T stored [n x k] and A^T stored [k x m] views.
  std::vector<float> bt(static_cast<std::size_t>(n) * k), at(static_cast<std::size_t>(k) * m);
  for (int p = 0; p < k; ++p) {
    for (int j = 0; j < n; ++j) bt[static_cast<std::size_t>(j) * k + p] = b[p * n + j];
    for (int i = 0; i < m; ++i) at[static_cast<std::size_t>(p) * m + i] = a[i * k + p];
  }

  BackendGuard guard;
  for (ks::Backend backend : {ks::Backend::kScalar, ks::Backend::kAvx2}) {
    if (!ks::backend_supported(backend)) continue;
    ks::set_backend(backend);
    std::vector<float> c_nn(expected.size()), c_nt(expected.size()), c_tn(expected.size());
    ks::gemm_nn(a.data(), b.data(), c_nn.data(), m, k, n, false);
    ks::gemm_nt(a.data(), bt.data(), c_nt.data(), m, k, n, false);
    ks::gemm_tn(at.data(), b.data(), c_tn.data(), m, k, n, false);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(std::abs(c_nn[i] - expected[i]) <= 1e-4f);
      CHECK(std::abs(c_nt[i] - expected[i]) <= 1e-4f);
      CHECK(std::abs(c_tn[i] - expected[i]) <= 1e-4f);
    }
    // accumulate adds on top
    ks::gemm_nn(a.data(), b.data(), c_nn.data(), m, k, n, true);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(std::abs(c_nn[i] - 2.0f * expected[i]) <= 2e-4f);
    }
  }
}

TEST_CASE("softmax is a distribution and matches exp normalization") {
  Rng rng(11);
  for (int n : {1, 3, 8, 33}) {
    const auto x = random_vec(rng, n, 4.0f);
    std::vector<float> y(static_cast<std::size_t>(n));
    ks::softmax(x.data(), y.data(), n);
    double sum = 0.0;
    for (float v : y) {
      CHECK(v >= 0.0f);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-5);
    // ratio check against direct exponentials
    for (int i = 1; i < n; ++i) {
      const double expected = std::exp(static_cast<double>(x[i]) - x[0]);
      CHECK(static_cast<double>(y[i]) / y[0] == doctest::Approx(expected).epsilon(1e-4));
    }
  }
}

TEST_CASE("backend override reports its name") {
  BackendGuard guard;
  ks::set_backend(ks::Backend::kScalar);
  CHECK(std::string(ks::backend_name(ks::active_backend())) == "scalar");
}
