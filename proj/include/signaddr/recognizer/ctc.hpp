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

#include <vector>

#include "signaddr/core/tensor.hpp"
#include "signaddr/nn/graph.hpp"

namespace signaddr::recognizer {

/// Non-blank symbol ids (values >= 1).
using LabelSequence = std::vector<int>;

/// The collapse mapping: merge maximal runs of identical symbols, then drop
/// blanks. Input is a frame path over the alphabet including blank (id 0).
LabelSequence collapse(const std::vector<int>& path);

/// Per-frame distributions over the alphabet including blank. Stored in
/// double precision; the CTC dynamic program is exact to ~1e-15.
class FrameDistributionSequence {
 public:
  FrameDistributionSequence(int frames, int symbols);
  int frames() const { return frames_; }
  int symbols() const { return symbols_; }
  double prob(int t, int k) const { return p_[static_cast<std::size_t>(t) * symbols_ + k]; }
  double& prob(int t, int k) { return p_[static_cast<std::size_t>(t) * symbols_ + k]; }
  /// Throws DomainError unless every frame is a distribution (non-negative,
  /// sums to 1 within 1e-6).
  void validate() const;

 private:
  int frames_;
  int symbols_;
  std::vector<double> p_;
};

/// log p(l | y) summed over all paths collapsing to l; -inf if unreachable.
double ctc_log_probability(const FrameDistributionSequence& y, const LabelSequence& l);
/// p(l | y); 0 for unreachable targets.
double ctc_probability(const FrameDistributionSequence& y, const LabelSequence& l);

/// collapse(per-frame argmax); ties pick the lowest symbol id.
LabelSequence ctc_greedy_decode(const FrameDistributionSequence& y);

/// Path-level beam search: keeps the beam_width most probable frame paths,
/// then rescores each distinct collapsed candidate with the exact dynamic
/// program and returns the best. Width 1 therefore equals greedy decoding,
/// and a width of symbols^frames is exhaustive.
LabelSequence ctc_beam_decode(const FrameDistributionSequence& y, long beam_width);

/// Smallest frame count that can emit l (length plus adjacent repeats).
int ctc_min_frames(const LabelSequence& l);

/// -log p(l | softmax(logits)) as a graph node over [T x K] frame logits.
/// The forward-backward recursions run in double precision; the gradient is
/// softmax minus the CTC posterior. Throws DomainError when l is unreachable.
nn::Var ctc_loss(const nn::Var& logits, const LabelSequence& l);

/// Same loss evaluated without the graph, in full double precision (used by
/// finite-difference checks).
double ctc_loss_value(const core::Tensor& logits, const LabelSequence& l);

}  // namespace signaddr::recognizer
