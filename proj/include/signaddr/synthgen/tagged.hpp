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

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace signaddr::synthgen {

/// The five address components carried by the tag scheme.
inline constexpr std::array<const char*, 5> kComponents = {"HOUSE", "ROAD", "AREA", "THANA",
                                                           "DISTRICT"};

bool is_component_label(const std::string& label);

/// Word tokens with BIO tags: "B-X"/"I-X" for component X, or "O".
struct TaggedAddress {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

/// Checks length match, tag vocabulary, and that every I-X follows B-X/I-X.
void validate_tagged(const TaggedAddress& sample);

/// Promotes a leading I-X (no preceding B-X/I-X) to B-X.
std::vector<std::string> repair_bio(const std::vector<std::string>& tags);

/// Distinct component labels in the sample.
std::set<std::string> components_present(const TaggedAddress& sample);

enum class AugmentOp { kDropComponent, kSwapComponents, kReverse, kStripPunct };
const char* augment_op_name(AugmentOp op);

/// Applies the requested ops in the fixed order drop, swap, reverse,
/// strip_punct, sharing one seeded stream. Preconditions: drop and swap need
/// at least two distinct components present.
TaggedAddress augment_tagged_address(const TaggedAddress& sample, const std::set<AugmentOp>& ops,
                                     std::uint64_t seed);

/// CoNLL-style blocks: `token TAB tag` lines, blank line between samples.
void write_conll(const std::vector<TaggedAddress>& samples, const std::filesystem::path& path);
std::vector<TaggedAddress> read_conll(const std::filesystem::path& path);

}  // namespace signaddr::synthgen
