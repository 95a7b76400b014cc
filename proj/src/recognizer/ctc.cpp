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

#include "signaddr/recognizer/ctc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "signaddr/core/error.hpp"
#include "signaddr/kernels/kernels.hpp"

namespace signaddr::recognizer {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lse2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double lse3(double a, double b, double c) { return lse2(lse2(a, b), c); }

// Blank-interleaved target: blank, l1, blank, l2, ..., blank.
std::vector<int> extended_target(const LabelSequence& l) {
  std::vector<int> ext;
  ext.reserve(2 * l.size() + 1);
  ext.push_back(0);
  for (int id : l) {
    ext.push_back(id);
    ext.push_back(0);
  }
  return ext;
}

void check_labels(const LabelSequence& l, int symbols) {
  for (int id : l) {
    if (id < 1 || id >= symbols) {
      throw DomainError("label id out of alphabet range: " + std::to_string(id));
    }
  }
}

// logy is [T x K] row-major log probabilities.
std::vector<double> forward_alpha(const std::vector<double>& logy, int t_len, int k,
                                  const std::vector<int>& ext) {
  const int s_len = static_cast<int>(ext.size());
  std::vector<double> alpha(static_cast<std::size_t>(t_len) * s_len, kNegInf);
  auto at = [&](int t, int s) -> double& { return alpha[static_cast<std::size_t>(t) * s_len + s]; };
  auto ly = [&](int t, int sym) { return logy[static_cast<std::size_t>(t) * k + sym]; };

  at(0, 0) = ly(0, ext[0]);
  if (s_len > 1) at(0, 1) = ly(0, ext[1]);
  for (int t = 1; t < t_len; ++t) {
    for (int s = 0; s < s_len; ++s) {
      double best = at(t - 1, s);
      if (s >= 1) best = lse2(best, at(t - 1, s - 1));
      if (s >= 2 && ext[s] != 0 && ext[s] != ext[s - 2]) best = lse2(best, at(t - 1, s - 2));
      at(t, s) = best == kNegInf ? kNegInf : best + ly(t, ext[s]);
    }
  }
  return alpha;
}

// beta'[t][s]: probability of completing from state s using frames t+1..T-1.
std::vector<double> backward_beta(const std::vector<double>& logy, int t_len, int k,
                                  const std::vector<int>& ext) {
  const int s_len = static_cast<int>(ext.size());
  std::vector<double> beta(static_cast<std::size_t>(t_len) * s_len, kNegInf);
  auto at = [&](int t, int s) -> double& { return beta[static_cast<std::size_t>(t) * s_len + s]; };
  auto ly = [&](int t, int sym) { return logy[static_cast<std::size_t>(t) * k + sym]; };

  at(t_len - 1, s_len - 1) = 0.0;
  if (s_len > 1) at(t_len - 1, s_len - 2) = 0.0;
  for (int t = t_len - 2; t >= 0; --t) {
    for (int s = 0; s < s_len; ++s) {
      double acc = at(t + 1, s) + ly(t + 1, ext[s]);
      if (s + 1 < s_len) acc = lse2(acc, at(t + 1, s + 1) + ly(t + 1, ext[s + 1]));
      if (s + 2 < s_len && ext[s + 2] != 0 && ext[s + 2] != ext[s]) {
        acc = lse2(acc, at(t + 1, s + 2) + ly(t + 1, ext[s + 2]));
      }
      at(t, s) = acc;
    }
  }
  return beta;
}

std::vector<double> log_probs_of(const FrameDistributionSequence& y) {
  const int t_len = y.frames(), k = y.symbols();
  std::vector<double> logy(static_cast<std::size_t>(t_len) * k);
  for (int t = 0; t < t_len; ++t) {
    for (int s = 0; s < k; ++s) {
      const double p = y.prob(t, s);
      logy[static_cast<std::size_t>(t) * k + s] = p > 0.0 ? std::log(p) : kNegInf;
    }
  }
  return logy;
}

// Row-wise log softmax of float logits, in double.
std::vector<double> log_softmax_double(const core::Tensor& logits) {
  const int t_len = logits.rows(), k = logits.cols();
  std::vector<double> out(static_cast<std::size_t>(t_len) * k);
  for (int t = 0; t < t_len; ++t) {
    const float* row = logits.row(t);
    double m = row[0];
    for (int s = 1; s < k; ++s) m = std::max(m, static_cast<double>(row[s]));
    double sum = 0.0;
    for (int s = 0; s < k; ++s) sum += std::exp(static_cast<double>(row[s]) - m);
    const double log_z = m + std::log(sum);
    for (int s = 0; s < k; ++s) {
      out[static_cast<std::size_t>(t) * k + s] = static_cast<double>(row[s]) - log_z;
    }
  }
  return out;
}

double total_log_prob(const std::vector<double>& alpha, int t_len, int s_len) {
  const double a1 = alpha[static_cast<std::size_t>(t_len - 1) * s_len + (s_len - 1)];
  const double a2 = s_len > 1 ? alpha[static_cast<std::size_t>(t_len - 1) * s_len + (s_len - 2)] : kNegInf;
  return lse2(a1, a2);
}

}  // namespace

LabelSequence collapse(const std::vector<int>& path) {
  LabelSequence out;
  int prev = -1;
  for (int id : path) {
    if (id != prev && id != 0) out.push_back(id);
    prev = id;
  }
  return out;
}

FrameDistributionSequence::FrameDistributionSequence(int frames, int symbols)
    : frames_(frames), symbols_(symbols) {
  if (frames < 1) throw DomainError("frame count must be positive");
  if (symbols < 2) throw DomainError("alphabet must hold blank plus at least one symbol");
  p_.assign(static_cast<std::size_t>(frames) * symbols, 0.0);
}

void FrameDistributionSequence::validate() const {
  for (int t = 0; t < frames_; ++t) {
    double sum = 0.0;
    for (int s = 0; s < symbols_; ++s) {
      const double p = prob(t, s);
      if (p < 0.0) throw DomainError("negative frame probability at t=" + std::to_string(t));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DomainError("frame " + std::to_string(t) + " does not sum to 1 (sum=" + std::to_string(sum) + ")");
    }
  }
}

double ctc_log_probability(const FrameDistributionSequence& y, const LabelSequence& l) {
  check_labels(l, y.symbols());
  if (ctc_min_frames(l) > y.frames()) return kNegInf;
  const std::vector<double> logy = log_probs_of(y);
  const std::vector<int> ext = extended_target(l);
  const std::vector<double> alpha = forward_alpha(logy, y.frames(), y.symbols(), ext);
  return total_log_prob(alpha, y.frames(), static_cast<int>(ext.size()));
}

double ctc_probability(const FrameDistributionSequence& y, const LabelSequence& l) {
  const double lp = ctc_log_probability(y, l);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

LabelSequence ctc_greedy_decode(const FrameDistributionSequence& y) {
  std::vector<int> path(static_cast<std::size_t>(y.frames()));
  for (int t = 0; t < y.frames(); ++t) {
    int best = 0;
    for (int s = 1; s < y.symbols(); ++s) {
      if (y.prob(t, s) > y.prob(t, best)) best = s;
    }
    path[static_cast<std::size_t>(t)] = best;
  }
  return collapse(path);
}

LabelSequence ctc_beam_decode(const FrameDistributionSequence& y, long beam_width) {
  if (beam_width < 1) throw DomainError("beam width must be at least 1");
  const int t_len = y.frames(), k = y.symbols();
  const std::vector<double> logy = log_probs_of(y);

  struct Hyp {
    std::vector<int> path;
    double logp;
  };
  auto better = [](const Hyp& a, const Hyp& b) {
    if (a.logp != b.logp) return a.logp > b.logp;
    return a.path < b.path;  // deterministic tie-break
  };

  std::vector<Hyp> beam = {{{}, 0.0}};
  for (int t = 0; t < t_len; ++t) {
    std::vector<Hyp> expanded;
    expanded.reserve(beam.size() * static_cast<std::size_t>(k));
    for (const Hyp& hyp : beam) {
      for (int s = 0; s < k; ++s) {
        Hyp next = hyp;
        next.path.push_back(s);
        next.logp += logy[static_cast<std::size_t>(t) * k + s];
        expanded.push_back(std::move(next));
      }
    }
    std::sort(expanded.begin(), expanded.end(), better);
    if (static_cast<long>(expanded.size()) > beam_width) {
      expanded.resize(static_cast<std::size_t>(beam_width));
    }
    beam = std::move(expanded);
  }

  // Rescore the distinct collapsed candidates exactly; the winner's summed
  // probability is then monotone in beam width.
  std::vector<LabelSequence> candidates;
  for (const Hyp& hyp : beam) {
    LabelSequence label = collapse(hyp.path);
    if (std::find(candidates.begin(), candidates.end(), label) == candidates.end()) {
      candidates.push_back(std::move(label));
    }
  }
  LabelSequence best;
  double best_lp = kNegInf;
  bool first = true;
  for (const LabelSequence& label : candidates) {
    const double lp = ctc_log_probability(y, label);
    if (first || lp > best_lp || (lp == best_lp && label < best)) {
      best = label;
      best_lp = lp;
      first = false;
    }
  }
  return best;
}

int ctc_min_frames(const LabelSequence& l) {
  int repeats = 0;
  for (std::size_t i = 1; i < l.size(); ++i) {
    if (l[i] == l[i - 1]) ++repeats;
  }
  return static_cast<int>(l.size()) + repeats;
}

nn::Var ctc_loss(const nn::Var& logits, const LabelSequence& l) {
  if (logits->value.rank() != 2) throw DomainError("ctc_loss expects [T x K] logits");
  const int t_len = logits->value.rows(), k = logits->value.cols();
  check_labels(l, k);
  if (ctc_min_frames(l) > t_len) {
    throw DomainError("CTC target unreachable: needs " + std::to_string(ctc_min_frames(l)) +
                      " frames, sequence has " + std::to_string(t_len));
  }

  const std::vector<double> logy = log_softmax_double(logits->value);
  const std::vector<int> ext = extended_target(l);
  const int s_len = static_cast<int>(ext.size());
  const std::vector<double> alpha = forward_alpha(logy, t_len, k, ext);
  const std::vector<double> beta = backward_beta(logy, t_len, k, ext);
  const double logp = total_log_prob(alpha, t_len, s_len);
  if (logp == kNegInf) {
    throw DomainError("CTC target has zero probability under the model");
  }

  // Gradient w.r.t. logits: softmax - posterior, precomputed here.
  auto grad = std::make_shared<core::Tensor>(core::Tensor({t_len, k}));
  for (int t = 0; t < t_len; ++t) {
    std::vector<double> gamma(static_cast<std::size_t>(k), 0.0);
    for (int s = 0; s < s_len; ++s) {
      const double q = alpha[static_cast<std::size_t>(t) * s_len + s] +
                       beta[static_cast<std::size_t>(t) * s_len + s] - logp;
      if (q != kNegInf) gamma[static_cast<std::size_t>(ext[s])] += std::exp(q);
    }
    for (int s = 0; s < k; ++s) {
      (*grad)(t, s) = static_cast<float>(std::exp(logy[static_cast<std::size_t>(t) * k + s]) -
                                         gamma[static_cast<std::size_t>(s)]);
    }
  }

  core::Tensor value = core::Tensor::scalar(static_cast<float>(-logp));
  return nn::make_node(std::move(value), {logits}, [grad](nn::Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    kernels::axpy(self.grad[0], grad->data(), self.inputs[0]->grad_buffer().data(),
                  static_cast<int>(grad->size()));
  });
}

double ctc_loss_value(const core::Tensor& logits, const LabelSequence& l) {
  const int t_len = logits.rows(), k = logits.cols();
  check_labels(l, k);
  if (ctc_min_frames(l) > t_len) {
    throw DomainError("CTC target unreachable");
  }
  const std::vector<double> logy = log_softmax_double(logits);
  const std::vector<int> ext = extended_target(l);
  const std::vector<double> alpha = forward_alpha(logy, t_len, k, ext);
  return -total_log_prob(alpha, t_len, static_cast<int>(ext.size()));
}

}  // namespace signaddr::recognizer
