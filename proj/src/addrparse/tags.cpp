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

#include "signaddr/addrparse/tags.hpp"

#include <algorithm>
#include <set>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::addrparse {

TagScheme TagScheme::bio() {
  TagScheme scheme;
  scheme.raw_ = false;
  scheme.tags_.push_back("O");
  for (const char* component : synthgen::kComponents) {
    scheme.tags_.push_back(std::string("B-") + component);
    scheme.tags_.push_back(std::string("I-") + component);
  }
  return scheme;
}

TagScheme TagScheme::raw() {
  TagScheme scheme;
  scheme.raw_ = true;
  scheme.tags_.push_back("O");
  for (const char* component : synthgen::kComponents) scheme.tags_.emplace_back(component);
  return scheme;
}

int TagScheme::id_of(const std::string& tag) const {
  const auto it = std::find(tags_.begin(), tags_.end(), tag);
  if (it == tags_.end()) throw ValidationError("tag not in scheme: " + tag);
  return static_cast<int>(it - tags_.begin());
}

const std::string& TagScheme::tag(int id) const {
  if (id < 0 || id >= size()) throw ValidationError("tag id out of range: " + std::to_string(id));
  return tags_[static_cast<std::size_t>(id)];
}

std::string TagScheme::from_bio(const std::string& bio_tag) const {
  if (!raw_ || bio_tag == "O") return bio_tag;
  return bio_tag.substr(2);
}

std::vector<EntitySpan> extract_spans(const std::vector<std::string>& tags) {
  std::vector<EntitySpan> spans;
  std::string open_label;
  int open_start = 0;
  auto close = [&](int end) {
    if (!open_label.empty()) {
      spans.push_back({open_label, open_start, end});
      open_label.clear();
    }
  };
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    const std::string& tag = tags[static_cast<std::size_t>(i)];
    if (tag == "O") {
      close(i);
      continue;
    }
    const bool has_prefix = tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-';
    const std::string label = has_prefix ? tag.substr(2) : tag;
    if (has_prefix && tag[0] == 'I' && label == open_label) {
      continue;  // span continues
    }
    if (!has_prefix && label == open_label) {
      continue;  // raw mode: adjacent same labels merge
    }
    close(i);
    open_label = label;  // B-X, repaired leading I-X, or raw label
    open_start = i;
  }
  close(static_cast<int>(tags.size()));
  return spans;
}

EntityMetrics entity_metrics(const std::vector<std::vector<std::string>>& predicted,
                             const std::vector<std::vector<std::string>>& gold) {
  if (predicted.size() != gold.size()) {
    throw ValidationError("predicted/gold sample counts differ");
  }
  long span_matches = 0, pred_spans = 0, gold_spans = 0;
  long token_matches = 0, tokens = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (predicted[s].size() != gold[s].size()) {
      throw ValidationError("tag sequence length mismatch at sample " + std::to_string(s));
    }
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      ++tokens;
      if (predicted[s][i] == gold[s][i]) ++token_matches;
    }
    std::vector<EntitySpan> p = extract_spans(predicted[s]);
    const std::vector<EntitySpan> g = extract_spans(gold[s]);
    pred_spans += static_cast<long>(p.size());
    gold_spans += static_cast<long>(g.size());
    for (const EntitySpan& span : g) {
      const auto it = std::find(p.begin(), p.end(), span);
      if (it != p.end()) {
        ++span_matches;
        p.erase(it);
      }
    }
  }
  EntityMetrics m;
  m.precision = pred_spans == 0 ? 0.0 : static_cast<double>(span_matches) / pred_spans;
  m.recall = gold_spans == 0 ? 0.0 : static_cast<double>(span_matches) / gold_spans;
  m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  m.accuracy = tokens == 0 ? 0.0 : static_cast<double>(token_matches) / tokens;
  return m;
}

std::vector<std::string> tokenize_words(const std::string& text) {
  std::vector<std::string> tokens;
  for (const std::string& chunk : core::split_whitespace(text)) {
    const std::vector<char32_t> cps = core::utf8_decode(chunk);
    std::vector<char32_t> run;
    bool run_is_punct = false;
    auto flush = [&]() {
      if (!run.empty()) {
        tokens.push_back(core::utf8_encode(run));
        run.clear();
      }
    };
    for (char32_t cp : cps) {
      const bool punct = core::is_punctuation(cp);
      if (!run.empty() && punct != run_is_punct) flush();
      run_is_punct = punct;
      run.push_back(cp);
    }
    flush();
  }
  return tokens;
}

}  // namespace signaddr::addrparse
