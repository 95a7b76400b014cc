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

#include "signaddr/synthgen/tagged.hpp"

#include <algorithm>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::synthgen {

bool is_component_label(const std::string& label) {
  return std::find(kComponents.begin(), kComponents.end(), label) != kComponents.end();
}

namespace {

// "" for O, component name for B-X / I-X; throws on anything else.
std::string tag_component(const std::string& tag) {
  if (tag == "O") return "";
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    const std::string component = tag.substr(2);
    if (is_component_label(component)) return component;
  }
  throw ValidationError("unknown tag: " + tag);
}

struct Segment {
  std::string label;  // component name, or "" for an O run
  std::vector<std::string> tokens;
};

std::vector<Segment> to_segments(const TaggedAddress& sample) {
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < sample.tokens.size(); ++i) {
    const std::string& tag = sample.tags[i];
    const std::string component = tag_component(tag);
    const bool starts_new = segments.empty() || tag[0] == 'B' || segments.back().label != component;
    if (starts_new) segments.push_back({component, {}});
    segments.back().tokens.push_back(sample.tokens[i]);
  }
  return segments;
}

TaggedAddress from_segments(const std::vector<Segment>& segments) {
  TaggedAddress out;
  for (const Segment& seg : segments) {
    for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
      out.tokens.push_back(seg.tokens[i]);
      if (seg.label.empty()) {
        out.tags.push_back("O");
      } else {
        out.tags.push_back((i == 0 ? "B-" : "I-") + seg.label);
      }
    }
  }
  return out;
}

bool token_is_punctuation(const std::string& token) {
  const auto cps = core::utf8_decode(token);
  if (cps.empty()) return false;
  return std::all_of(cps.begin(), cps.end(), core::is_punctuation);
}

}  // namespace

void validate_tagged(const TaggedAddress& sample) {
  if (sample.tokens.size() != sample.tags.size()) {
    throw ValidationError("token/tag length mismatch: " + std::to_string(sample.tokens.size()) + " vs " +
                          std::to_string(sample.tags.size()));
  }
  std::string prev;
  for (const std::string& tag : sample.tags) {
    const std::string component = tag_component(tag);
    if (tag[0] == 'I') {
      const bool ok = !prev.empty() && prev != "O" && prev.substr(2) == component;
      if (!ok) throw ValidationError("I-" + component + " not preceded by B/I of the same component");
    }
    prev = tag;
  }
}

std::vector<std::string> repair_bio(const std::vector<std::string>& tags) {
  std::vector<std::string> repaired = tags;
  std::string prev;
  for (std::string& tag : repaired) {
    const std::string component = tag_component(tag);
    if (tag[0] == 'I') {
      const bool ok = !prev.empty() && prev != "O" && prev.substr(2) == component;
      if (!ok) tag = "B-" + component;
    }
    prev = tag;
  }
  return repaired;
}

std::set<std::string> components_present(const TaggedAddress& sample) {
  std::set<std::string> present;
  for (const std::string& tag : sample.tags) {
    const std::string component = tag_component(tag);
    if (!component.empty()) present.insert(component);
  }
  return present;
}

const char* augment_op_name(AugmentOp op) {
  switch (op) {
    case AugmentOp::kDropComponent: return "drop_component";
    case AugmentOp::kSwapComponents: return "swap_components";
    case AugmentOp::kReverse: return "reverse";
    case AugmentOp::kStripPunct: return "strip_punct";
  }
  return "?";
}

TaggedAddress augment_tagged_address(const TaggedAddress& sample, const std::set<AugmentOp>& ops,
                                     std::uint64_t seed) {
  validate_tagged(sample);
  core::Rng rng(seed);
  TaggedAddress current = sample;

  if (ops.count(AugmentOp::kDropComponent) != 0) {
    std::vector<Segment> segments = to_segments(current);
    const std::set<std::string> present = components_present(current);
    if (present.size() < 2) {
      throw DomainError("drop_component needs at least 2 distinct components");
    }
    std::vector<std::string> labels(present.begin(), present.end());
    const std::string victim = rng.pick(labels);
    std::vector<Segment> kept;
    for (Segment& seg : segments) {
      if (seg.label != victim) kept.push_back(std::move(seg));
    }
    current = from_segments(kept);
  }

  if (ops.count(AugmentOp::kSwapComponents) != 0) {
    std::vector<Segment> segments = to_segments(current);
    const std::set<std::string> present = components_present(current);
    if (present.size() < 2) {
      throw DomainError("swap_components needs at least 2 distinct components");
    }
    std::vector<std::string> labels(present.begin(), present.end());
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(labels.size()) - 1));
    auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(labels.size()) - 2));
    if (j >= i) ++j;
    auto first_of = [&segments](const std::string& label) {
      for (std::size_t k = 0; k < segments.size(); ++k) {
        if (segments[k].label == label) return k;
      }
      throw DomainError("component vanished during swap");
    };
    std::swap(segments[first_of(labels[i])], segments[first_of(labels[j])]);
    current = from_segments(segments);
  }

  if (ops.count(AugmentOp::kReverse) != 0) {
    std::vector<Segment> segments = to_segments(current);
    std::reverse(segments.begin(), segments.end());
    current = from_segments(segments);
  }

  if (ops.count(AugmentOp::kStripPunct) != 0) {
    TaggedAddress stripped;
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      if (token_is_punctuation(current.tokens[i])) continue;
      stripped.tokens.push_back(current.tokens[i]);
      stripped.tags.push_back(current.tags[i]);
    }
    stripped.tags = repair_bio(stripped.tags);
    current = std::move(stripped);
  }

  validate_tagged(current);
  return current;
}

void write_conll(const std::vector<TaggedAddress>& samples, const std::filesystem::path& path) {
  std::string out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (s != 0) out += '\n';
    for (std::size_t i = 0; i < samples[s].tokens.size(); ++i) {
      out += samples[s].tokens[i];
      out += '\t';
      out += samples[s].tags[i];
      out += '\n';
    }
  }
  core::write_text_file(path, out);
}

std::vector<TaggedAddress> read_conll(const std::filesystem::path& path) {
  std::vector<TaggedAddress> samples;
  TaggedAddress current;
  std::size_t line_no = 0;
  auto flush = [&]() {
    if (!current.tokens.empty()) {
      validate_tagged(current);
      samples.push_back(std::move(current));
      current = {};
    }
  };
  for (const std::string& line : core::split_lines(core::read_text_file(path))) {
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    const auto fields = core::split_on(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 'token<TAB>tag'");
    }
    current.tokens.push_back(fields[0]);
    current.tags.push_back(fields[1]);
  }
  flush();
  return samples;
}

}  // namespace signaddr::synthgen
