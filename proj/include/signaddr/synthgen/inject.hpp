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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "signaddr/synthgen/corpus.hpp"

namespace signaddr::synthgen {

struct CorrectionPair {
  std::string corrupted;
  std::string original;
  int edit_count = 0;
};

/// Unit on which atomic edits act. Bengali combining marks make "character"
/// ambiguous; the default is code points, grapheme mode treats a cluster as
/// one unit.
enum class EditUnit { kCodePoint, kGrapheme };

/// Draws an error rate uniformly in [0.01, 0.10], applies
/// max(1, round(rate * len)) atomic edits, each chosen uniformly among
/// insert / replace / delete (insert forced when the text has become empty).
/// Inserted and replacement characters come from the corpus alphabet. A
/// replace may redraw the original character; it still counts as an edit, so
/// Levenshtein(corrupted, original) <= edit_count rather than equality.
CorrectionPair inject_errors(const std::string& original, std::uint64_t seed,
                             const AddressCorpus& corpus, EditUnit unit = EditUnit::kCodePoint);

/// n pairs sampled uniformly with replacement from the corpus entries,
/// per-index seeds derived from the base seed.
std::vector<CorrectionPair> generate_correction_dataset(const AddressCorpus& corpus, int n,
                                                        std::uint64_t seed,
                                                        EditUnit unit = EditUnit::kCodePoint);

/// Tab-separated {corrupted, original}, one pair per line.
void write_correction_manifest(const std::vector<CorrectionPair>& pairs,
                               const std::filesystem::path& path);
std::vector<CorrectionPair> read_correction_manifest(const std::filesystem::path& path);

}  // namespace signaddr::synthgen
