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

#include <string>
#include <vector>

#include "signaddr/synthgen/tagged.hpp"

namespace signaddr::addrparse {

/// Tag <-> id bijection. BIO mode: O + B-X/I-X for the five components
/// (11 tags). Raw mode merges B and I into a bare component label (6 tags).
class TagScheme {
 public:
  static TagScheme bio();
  static TagScheme raw();

  int size() const { return static_cast<int>(tags_.size()); }
  int id_of(const std::string& tag) const;
  const std::string& tag(int id) const;
  bool is_raw() const { return raw_; }

  /// Converts a BIO tag into this scheme (identity for BIO, merge for raw).
  std::string from_bio(const std::string& bio_tag) const;

 private:
  std::vector<std::string> tags_;
  bool raw_ = false;
};

struct EntitySpan {
  std::string label;
  int start = 0;  // inclusive token index
  int end = 0;    // exclusive

  bool operator==(const EntitySpan& other) const = default;
};

/// Maximal B-X (I-X)* runs; a leading I-X is repaired to B-X first. In raw
/// mode adjacent same-label tokens form one span.
std::vector<EntitySpan> extract_spans(const std::vector<std::string>& tags);

struct EntityMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;  // token-level tag match ratio
};

/// Exact-span precision/recall/F1 (label and boundaries both match) plus
/// token accuracy. Throws ValidationError with the sample index when a
/// predicted sequence length differs from its gold sequence.
EntityMetrics entity_metrics(const std::vector<std::vector<std::string>>& predicted,
                             const std::vector<std::vector<std::string>>& gold);

/// Whitespace split with punctuation-only runs detached as separate tokens.
std::vector<std::string> tokenize_words(const std::string& text);

}  // namespace signaddr::addrparse
