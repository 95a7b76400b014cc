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

#include "signaddr/synthgen/inject.hpp"

#include <cmath>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::synthgen {

CorrectionPair inject_errors(const std::string& original, std::uint64_t seed,
                             const AddressCorpus& corpus, EditUnit unit) {
  if (original.empty()) throw DomainError("cannot inject errors into an empty string");

  const std::vector<char32_t> cps = core::utf8_decode(original);
  std::vector<std::u32string> units;
  std::vector<std::u32string> inventory;
  if (unit == EditUnit::kCodePoint) {
    units.reserve(cps.size());
    for (char32_t cp : cps) units.push_back(std::u32string(1, cp));
    inventory.reserve(corpus.alphabet.size());
    for (char32_t cp : corpus.alphabet) inventory.push_back(std::u32string(1, cp));
  } else {
    units = core::grapheme_clusters(cps);
    inventory = corpus.grapheme_inventory();
  }
  if (inventory.empty()) throw ValidationError("corpus alphabet is empty");

  core::Rng rng(seed);
  const int len = static_cast<int>(units.size());
  const double rate = rng.uniform(0.01, 0.10);
  const int edit_count = std::max(1, static_cast<int>(std::lround(rate * len)));

  for (int e = 0; e < edit_count; ++e) {
    int op = static_cast<int>(rng.uniform_int(0, 2));  // 0 insert, 1 replace, 2 delete
    if (units.empty()) op = 0;                          // only insertion is possible
    if (op == 0) {
      const auto pos = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(units.size())));
      const std::u32string& d = rng.pick(inventory);
      units.insert(units.begin() + static_cast<std::ptrdiff_t>(pos), d);
    } else if (op == 1) {
      const auto pos =
          static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(units.size()) - 1));
      units[pos] = rng.pick(inventory);
    } else {
      const auto pos =
          static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(units.size()) - 1));
      units.erase(units.begin() + static_cast<std::ptrdiff_t>(pos));
    }
  }

  std::vector<char32_t> out;
  for (const std::u32string& u : units) out.insert(out.end(), u.begin(), u.end());
  return CorrectionPair{core::utf8_encode(out), original, edit_count};
}

std::vector<CorrectionPair> generate_correction_dataset(const AddressCorpus& corpus, int n,
                                                        std::uint64_t seed, EditUnit unit) {
  if (n < 1) throw DomainError("dataset size must be at least 1");
  std::vector<CorrectionPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t sample_seed = core::Rng::mix(seed, static_cast<std::uint64_t>(i));
    core::Rng pick_rng(sample_seed);
    const std::string& entry = pick_rng.pick(corpus.entries);
    pairs.push_back(inject_errors(entry, core::Rng::mix(sample_seed, 1), corpus, unit));
  }
  return pairs;
}

void write_correction_manifest(const std::vector<CorrectionPair>& pairs,
                               const std::filesystem::path& path) {
  std::string out;
  for (const CorrectionPair& pair : pairs) {
    out += pair.corrupted;
    out += '\t';
    out += pair.original;
    out += '\n';
  }
  core::write_text_file(path, out);
}

std::vector<CorrectionPair> read_correction_manifest(const std::filesystem::path& path) {
  std::vector<CorrectionPair> pairs;
  std::size_t line_no = 0;
  for (const std::string& line : core::split_lines(core::read_text_file(path))) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = core::split_on(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 2 tab-separated fields");
    }
    pairs.push_back({fields[0], fields[1], 0});
  }
  return pairs;
}

}  // namespace signaddr::synthgen
