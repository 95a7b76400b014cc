#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "signaddr/core/error.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/nn/ops.hpp"
#include "signaddr/recognizer/alphabet.hpp"
#include "signaddr/recognizer/ctc.hpp"

using namespace signaddr;
using namespace signaddr::recognizer;

namespace {

FrameDistributionSequence random_dist(core::Rng& rng, int t_len, int k) {
  FrameDistributionSequence y(t_len, k);
  for (int t = 0; t < t_len; ++t) {
    double sum = 0.0;
    for (int s = 0; s < k; ++s) {
      const double v = rng.uniform(0.01, 1.0);
      y.prob(t, s) = v;
      sum += v;
    }
    for (int s = 0; s < k; ++s) y.prob(t, s) /= sum;
  }
  return y;
}

std::vector<std::vector<double>> to_table(const FrameDistributionSequence& y) {
  std::vector<std::vector<double>> table(static_cast<std::size_t>(y.frames()),
                                         std::vector<double>(static_cast<std::size_t>(y.symbols())));
  for (int t = 0; t < y.frames(); ++t) {
    for (int s = 0; s < y.symbols(); ++s) table[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = y.prob(t, s);
  }
  return table;
}

// All label sequences over ids 1..k-1 with length 0..max_len.
void enumerate_labels(int k, int max_len, std::vector<LabelSequence>& out) {
  out.push_back({});
  std::vector<LabelSequence> frontier = {{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<LabelSequence> next;
    for (const LabelSequence& prefix : frontier) {
      for (int s = 1; s < k; ++s) {
        LabelSequence seq = prefix;
        seq.push_back(s);
        out.push_back(seq);
        next.push_back(std::move(seq));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

TEST_CASE("collapse fixtures") {
  // alphabet {e,h,l,o}: e=1 h=2 l=3 o=4, blank 0 rendered as '-'
  const Alphabet alphabet = Alphabet::from_texts({"helo"});
  auto path_ids = [&](const std::string& path) {
    std::vector<int> ids;
    for (char c : path) ids.push_back(c == '-' ? 0 : alphabet.id_of(static_cast<char32_t>(c)));
    return ids;
  };
  CHECK(alphabet.decode(collapse(path_ids("--hh-eee-ll--lll--oo-"))) == "hello");
  CHECK(collapse({}).empty());
}

TEST_CASE("collapse run-merge then blank removal") {
  // "aa-a" with a=1: runs merge first, blank splits the run
  CHECK(collapse({1, 1, 0, 1}) == LabelSequence{1, 1});
  CHECK(collapse({0, 0, 0}) == LabelSequence{});
  CHECK(collapse({1, 2, 2, 0, 2}) == LabelSequence{1, 2, 2});
}

TEST_CASE("collapse is blank-free everywhere and idempotent on blank-free paths") {
  core::Rng rng(17);
  for (int trial = 0; trial < 10000; ++trial) {
    const int t_len = static_cast<int>(rng.uniform_int(0, 12));
    const int k = static_cast<int>(rng.uniform_int(2, 4));
    std::vector<int> path(static_cast<std::size_t>(t_len));
    for (int& id : path) id = static_cast<int>(rng.uniform_int(0, k - 1));
    const LabelSequence once = collapse(path);
    for (int id : once) CHECK(id != 0);
    CHECK(once == testutil::collapse_reference(path));

    // blank-free path: collapse merges runs only, so it is idempotent
    std::vector<int> blank_free(path);
    for (int& id : blank_free) id = id == 0 ? 1 : id;
    const LabelSequence merged = collapse(blank_free);
    CHECK(collapse(merged) == merged);
  }
}

TEST_CASE("ctc probability fixtures") {
  SUBCASE("single frame") {
    FrameDistributionSequence y(1, 2);
    y.prob(0, 0) = 0.4;
    y.prob(0, 1) = 0.6;
    CHECK(ctc_probability(y, {1}) == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("two frames, paths (a,a),(a,-),(-,a)") {
    FrameDistributionSequence y(2, 2);
    for (int t = 0; t < 2; ++t) {
      y.prob(t, 0) = 0.4;
      y.prob(t, 1) = 0.6;
    }
    CHECK(ctc_probability(y, {1}) == doctest::Approx(0.84).epsilon(1e-12));
  }
  SUBCASE("unreachable target") {
    FrameDistributionSequence y(1, 3);
    y.prob(0, 0) = 0.2;
    y.prob(0, 1) = 0.3;
    y.prob(0, 2) = 0.5;
    CHECK(ctc_probability(y, {1, 2}) == 0.0);
  }
}

TEST_CASE("dynamic program equals brute-force enumeration") {
  core::Rng rng(23);
  // dense grid over two-symbol distributions for T <= 3
  for (int t_len = 1; t_len <= 3; ++t_len) {
    std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<int> idx(static_cast<std::size_t>(t_len), 0);
    for (;;) {
      FrameDistributionSequence y(t_len, 2);
      for (int t = 0; t < t_len; ++t) {
        y.prob(t, 0) = grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
        y.prob(t, 1) = 1.0 - y.prob(t, 0);
      }
      const auto mass = testutil::ctc_brute_force(to_table(y));
      std::vector<LabelSequence> labels;
      enumerate_labels(2, t_len, labels);
      for (const LabelSequence& l : labels) {
        const auto it = mass.find(l);
        const double expected = it == mass.end() ? 0.0 : it->second;
        CHECK(std::abs(ctc_probability(y, l) - expected) <= 1e-10);
      }
      int pos = t_len - 1;
      while (pos >= 0) {
        if (++idx[static_cast<std::size_t>(pos)] < static_cast<int>(grid.size())) break;
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  // random instances up to T=5, |alphabet|=3
  for (int trial = 0; trial < 1000; ++trial) {
    const int t_len = static_cast<int>(rng.uniform_int(1, 5));
    const int k = static_cast<int>(rng.uniform_int(2, 3));
    const FrameDistributionSequence y = random_dist(rng, t_len, k);
    const auto mass = testutil::ctc_brute_force(to_table(y));
    std::vector<LabelSequence> labels;
    enumerate_labels(k, t_len, labels);
    for (const LabelSequence& l : labels) {
      const auto it = mass.find(l);
      const double expected = it == mass.end() ? 0.0 : it->second;
      CHECK(std::abs(ctc_probability(y, l) - expected) <= 1e-10);
    }
  }
}

TEST_CASE("label probabilities sum to one on exhaustive instances") {
  core::Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int t_len = static_cast<int>(rng.uniform_int(1, 4));
    const int k = static_cast<int>(rng.uniform_int(2, 3));
    const FrameDistributionSequence y = random_dist(rng, t_len, k);
    std::vector<LabelSequence> labels;
    enumerate_labels(k, t_len, labels);
    double total = 0.0;
    for (const LabelSequence& l : labels) total += ctc_probability(y, l);
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
}

TEST_CASE("greedy decode fixture and beam consistency") {
  FrameDistributionSequence y(3, 2);
  y.prob(0, 1) = 0.9;
  y.prob(0, 0) = 0.1;
  y.prob(1, 1) = 0.8;
  y.prob(1, 0) = 0.2;
  y.prob(2, 0) = 0.7;
  y.prob(2, 1) = 0.3;
  CHECK(ctc_greedy_decode(y) == LabelSequence{1});  // path a,a,blank

  core::Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int t_len = static_cast<int>(rng.uniform_int(1, 6));
    const int k = static_cast<int>(rng.uniform_int(2, 4));
    const FrameDistributionSequence r = random_dist(rng, t_len, k);
    CHECK(ctc_beam_decode(r, 1) == ctc_greedy_decode(r));
  }
}

TEST_CASE("exhaustive beam equals argmax over exact label probabilities") {
  core::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int t_len = static_cast<int>(rng.uniform_int(1, 4));
    const int k = static_cast<int>(rng.uniform_int(2, 3));
    const FrameDistributionSequence y = random_dist(rng, t_len, k);
    std::vector<LabelSequence> labels;
    enumerate_labels(k, t_len, labels);
    LabelSequence best;
    double best_p = -1.0;
    for (const LabelSequence& l : labels) {
      const double p = ctc_probability(y, l);
      if (p > best_p) {
        best_p = p;
        best = l;
      }
    }
    const long exhaustive = static_cast<long>(std::pow(k, t_len)) + 1;
    CHECK(ctc_beam_decode(y, exhaustive) == best);
  }
}

TEST_CASE("beam-decoded label probability is non-decreasing in width") {
  core::Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const FrameDistributionSequence y = random_dist(rng, 5, 3);
    double prev = -1.0;
    for (long width : {1L, 2L, 4L, 8L, 32L, 300L}) {
      const double p = ctc_probability(y, ctc_beam_decode(y, width));
      CHECK(p >= prev - 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("ctc loss values and gradients") {
  SUBCASE("certain model has zero loss") {
    // logits -> softmax == 1 for the target path impossible with finite
    // logits; use a sharp one and check loss ~ 0
    core::Tensor logits({1, 2});
    logits(0, 0) = -30.0f;
    logits(0, 1) = 30.0f;
    CHECK(ctc_loss_value(logits, {1}) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("0.84 fixture") {
    // frame distribution (0.4, 0.6) from logits log(0.4), log(0.6)
    core::Tensor logits({2, 2});
    for (int t = 0; t < 2; ++t) {
      logits(t, 0) = std::log(0.4f);
      logits(t, 1) = std::log(0.6f);
    }
    CHECK(ctc_loss_value(logits, {1}) == doctest::Approx(-std::log(0.84)).epsilon(1e-6));
  }
  SUBCASE("unreachable target throws") {
    core::Tensor logits({1, 3});
    CHECK_THROWS_AS(ctc_loss_value(logits, {1, 2}), DomainError);
    auto var = nn::make_leaf(core::Tensor({1, 3}), true);
    CHECK_THROWS_AS(ctc_loss(var, {1, 2}), DomainError);
  }
  SUBCASE("gradient matches central finite differences on random instances") {
    core::Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
      const int t_len = 4, k = 3;
      core::Tensor logits({t_len, k});
      for (std::size_t i = 0; i < logits.size(); ++i) {
        logits[i] = static_cast<float>(rng.uniform(-1.5, 1.5));
      }
      const LabelSequence target = {1, 2};

      nn::Var var = nn::make_leaf(logits, true);
      nn::Var loss = ctc_loss(var, target);
      nn::backward(loss);
      CHECK(loss->value[0] == doctest::Approx(ctc_loss_value(logits, target)).epsilon(1e-6));

      const float h = 1e-3f;
      for (std::size_t i = 0; i < logits.size(); ++i) {
        core::Tensor perturbed = logits;
        perturbed[i] = logits[i] + h;
        const double lp = ctc_loss_value(perturbed, target);
        perturbed[i] = logits[i] - h;
        const double lm = ctc_loss_value(perturbed, target);
        const double fd = (lp - lm) / (2.0 * h);
        const double analytic = var->grad[i];
        CHECK(std::abs(analytic - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("frame distribution validation") {
  FrameDistributionSequence y(2, 2);
  y.prob(0, 0) = 0.5;
  y.prob(0, 1) = 0.5;
  y.prob(1, 0) = 0.9;
  y.prob(1, 1) = 0.2;
  CHECK_THROWS_AS(y.validate(), DomainError);
  y.prob(1, 1) = 0.1;
  CHECK_NOTHROW(y.validate());
}
