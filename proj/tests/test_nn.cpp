#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/nn/checkpoint.hpp"
#include "signaddr/nn/layers.hpp"
#include "signaddr/nn/ops.hpp"
#include "signaddr/nn/optim.hpp"

using namespace signaddr;
using namespace signaddr::nn;

namespace {

// Central finite differences against analytic gradients over every
// parameter coordinate (stride-subsampled for big tensors). Loose detector
// tolerance: float32 forward noise dominates; real derivation errors are
// O(1) off.
void check_gradients(ParamSet& params, const std::function<Var()>& make_loss, float h = 1e-2f,
                     double tol = 5e-2, std::size_t max_coords_per_tensor = 12) {
  params.zero_grad();
  Var loss = make_loss();
  backward(loss);
  for (const auto& [name, var] : params.items()) {
    std::vector<float> analytic(var->value.size(), 0.0f);
    if (!var->grad.empty()) {
      std::copy(var->grad.data(), var->grad.data() + var->grad.size(), analytic.begin());
    }
    const std::size_t stride = std::max<std::size_t>(1, var->value.size() / max_coords_per_tensor);
    for (std::size_t i = 0; i < var->value.size(); i += stride) {
      const float saved = var->value[i];
      var->value[i] = saved + h;
      const float lp = make_loss()->value[0];
      var->value[i] = saved - h;
      const float lm = make_loss()->value[0];
      var->value[i] = saved;
      const double fd = (static_cast<double>(lp) - lm) / (2.0 * h);
      const double a = analytic[i];
      const double denom = std::max({0.05, std::abs(a), std::abs(fd)});
      INFO(name, "[", i, "] analytic=", a, " fd=", fd);
      CHECK(std::abs(a - fd) / denom < tol);
    }
  }
}

core::Rng& test_rng() {
  static core::Rng rng(1234);
  return rng;
}

Tensor random_tensor(std::vector<int> shape, float scale = 1.0f) {
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<float>(test_rng().uniform(-scale, scale));
  }
  return t;
}

}  // namespace

TEST_CASE("matmul values and backward shapes") {
  Var a = make_leaf(random_tensor({3, 4}), true);
  Var b = make_leaf(random_tensor({4, 5}), true);
  Var c = matmul(a, b);
  REQUIRE(c->value.rows() == 3);
  REQUIRE(c->value.cols() == 5);
  backward(mean_all(c));
  CHECK(a->grad.same_shape(a->value));
  CHECK(b->grad.same_shape(b->value));
}

TEST_CASE("linear + tanh + cross entropy gradcheck") {
  core::Rng rng(2);
  ParamSet params;
  Linear l1(params, "l1", 4, 6, rng);
  Linear l2(params, "l2", 6, 3, rng);
  const Tensor x = random_tensor({2, 4});
  const std::vector<int> targets = {1, 2};
  check_gradients(params, [&] {
    return cross_entropy_rows(l2(tanh_op(l1(constant(x)))), targets);
  });
}

TEST_CASE("sigmoid, relu, mul, add_rowvec gradcheck") {
  core::Rng rng(3);
  ParamSet params;
  Var w = params.add("w", random_tensor({3, 5}));
  Var v = params.add("v", random_tensor({3, 5}));
  Var bias = params.add("b", random_tensor({1, 5}));
  check_gradients(params, [&] {
    Var z = add_rowvec(mul(sigmoid_op(w), relu_op(v)), bias);
    return mean_all(mul(z, z));
  });
}

TEST_CASE("layer norm gradcheck") {
  core::Rng rng(4);
  ParamSet params;
  Var x = params.add("x", random_tensor({3, 6}));
  LayerNorm ln(params, "ln", 6);
  const std::vector<int> targets = {0, 3, 5};
  check_gradients(params, [&] { return cross_entropy_rows(ln(x), targets); });
}

TEST_CASE("softmax_rows backward via attention-style pooling") {
  core::Rng rng(5);
  ParamSet params;
  Var scores = params.add("s", random_tensor({2, 7}));
  Var values = params.add("v", random_tensor({7, 3}));
  const std::vector<int> targets = {1, 2};
  check_gradients(params, [&] { return cross_entropy_rows(matmul(softmax_rows(scores), values), targets); });
}

TEST_CASE("lstm cell gradcheck over a short sequence") {
  core::Rng rng(6);
  ParamSet params;
  LstmCell cell(params, "cell", 3, 4, rng);
  Linear head(params, "head", 4, 2, rng);
  const Tensor seq = random_tensor({4, 3});
  check_gradients(params, [&] {
    Var inputs = constant(seq);
    auto [h, c] = cell.initial_state();
    for (int t = 0; t < 4; ++t) std::tie(h, c) = cell.step(slice_rows(inputs, t, t + 1), h, c);
    return cross_entropy_rows(head(h), {1});
  });
}

TEST_CASE("bilstm output concatenates directions") {
  core::Rng rng(7);
  ParamSet params;
  BiLstm bilstm(params, "bi", 3, 5, rng);
  Var out = bilstm(constant(random_tensor({6, 3})));
  CHECK(out->value.rows() == 6);
  CHECK(out->value.cols() == 10);
}

TEST_CASE("conv2d + maxpool + frames gradcheck") {
  core::Rng rng(8);
  ParamSet params;
  Var w = params.add("w", xavier_uniform({2, 1, 3, 3}, 9, 18, rng));
  Var b = params.add("b", Tensor({2}));
  Linear head(params, "head", 2 * 2, 2, rng);
  const Tensor img = random_tensor({1, 4, 6});
  check_gradients(params, [&] {
    Var x = conv2d(constant(img), w, b);
    x = maxpool2d(x, 2, 2);            // (2, 2, 3)
    Var frames = frames_from_conv(x);  // [3 x 4]
    return cross_entropy_rows(head(frames), {0, 1, 0});
  });
}

TEST_CASE("conv2d matches a hand-computed 3x3 case") {
  // single channel, identity-ish kernel: center 1 -> output equals input
  Var w = make_leaf(Tensor({1, 1, 3, 3}), false);
  w->value[4] = 1.0f;  // center tap
  Var b = make_leaf(Tensor({1}), false);
  const Tensor img = random_tensor({1, 3, 5});
  Var y = conv2d(constant(img), w, b);
  for (std::size_t i = 0; i < img.size(); ++i) {
    CHECK(y->value[i] == doctest::Approx(img[i]));
  }
}

TEST_CASE("embedding rows gradcheck") {
  core::Rng rng(9);
  ParamSet params;
  Embedding emb(params, "e", 5, 4, rng);
  Linear head(params, "h", 4, 3, rng);
  check_gradients(params, [&] {
    return cross_entropy_rows(head(emb(std::vector<int>{1, 4, 1})), {0, 2, 1});
  });
}

TEST_CASE("transformer encoder layer gradcheck") {
  core::Rng rng(10);
  ParamSet params;
  TransformerEncoderLayer layer(params, "enc", 8, 2, 16, rng);
  Linear head(params, "head", 8, 2, rng);
  const Tensor x = random_tensor({3, 8}, 0.5f);
  check_gradients(params, [&] { return cross_entropy_rows(head(layer(constant(x))), {0, 1, 1}); },
                  1e-2f, 8e-2, 6);
}

TEST_CASE("causal mask blocks upper triangle exactly") {
  const Tensor mask = causal_mask(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j > i) {
        CHECK(mask(i, j) == -1e30f);
      } else {
        CHECK(mask(i, j) == 0.0f);
      }
    }
  }
}

TEST_CASE("optimizers reduce a quadratic") {
  // Adadelta ramps its step size up from ~sqrt(eps), so it gets more steps.
  for (const std::string family : {"adadelta", "adamw"}) {
    ParamSet params;
    Var w = params.add("w", random_tensor({1, 8}, 2.0f));
    auto opt = make_optimizer(family, family == "adadelta" ? 1.0f : 0.05f, 5.0f);
    auto loss_value = [&] {
      Var loss = mean_all(mul(w, w));
      return loss;
    };
    const float initial = loss_value()->value[0];
    const int steps = family == "adadelta" ? 4000 : 200;
    for (int step = 0; step < steps; ++step) {
      params.zero_grad();
      Var loss = loss_value();
      backward(loss);
      opt->step(params);
    }
    CHECK(loss_value()->value[0] < initial * 0.05f);
  }
}

TEST_CASE("gradient clipping bounds the global norm") {
  ParamSet params;
  Var w = params.add("w", Tensor({1, 4}));
  Var loss = scale(sum_all(w), 100.0f);
  backward(loss);
  clip_global_norm(params, 1.0f);
  double norm = 0.0;
  for (std::size_t i = 0; i < w->grad.size(); ++i) norm += w->grad[i] * w->grad[i];
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("checkpoint container round-trips bit-exactly") {
  testutil::TempDir tmp("ckpt");
  Checkpoint ckpt;
  ckpt.header = {{"kind", "test"}, {"config", {{"width", 8}}}};
  ckpt.tensors.emplace_back("a", random_tensor({3, 4}));
  ckpt.tensors.emplace_back("b", random_tensor({2, 2, 3, 3}));
  const auto path = tmp.path() / "model.ckpt";
  save_checkpoint(ckpt, path);
  const Checkpoint back = load_checkpoint(path);
  CHECK(back.header == ckpt.header);
  REQUIRE(back.tensors.size() == 2);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(back.tensors[t].first == ckpt.tensors[t].first);
    REQUIRE(back.tensors[t].second.size() == ckpt.tensors[t].second.size());
    for (std::size_t i = 0; i < back.tensors[t].second.size(); ++i) {
      CHECK(back.tensors[t].second[i] == ckpt.tensors[t].second[i]);
    }
  }
}

TEST_CASE("corrupt checkpoints are rejected") {
  testutil::TempDir tmp("badckpt");
  const auto path = tmp.path() / "bad.ckpt";
  core::write_text_file(path, "not a checkpoint");
  CHECK_THROWS(load_checkpoint(path));
  CHECK_THROWS_AS(load_checkpoint(tmp.path() / "missing.ckpt"), ValidationError);
}

TEST_CASE("sinusoidal positions are bounded and distinct") {
  const Tensor table = sinusoidal_positions(16, 8);
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i] <= 1.0f);
    CHECK(table[i] >= -1.0f);
  }
  bool any_diff = false;
  for (int j = 0; j < 8; ++j) any_diff |= table(1, j) != table(2, j);
  CHECK(any_diff);
}
