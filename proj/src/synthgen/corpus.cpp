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

#include "signaddr/synthgen/corpus.hpp"

#include <algorithm>
#include <set>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::synthgen {

AddressCorpus AddressCorpus::from_entries(std::vector<std::string> entries) {
  if (entries.empty()) throw ValidationError("address corpus has no entries");
  std::set<char32_t> chars;
  for (const std::string& entry : entries) {
    if (entry.empty()) throw ValidationError("address corpus entry is empty");
    for (char32_t cp : core::utf8_decode(entry)) chars.insert(cp);
  }
  AddressCorpus corpus;
  corpus.entries = std::move(entries);
  corpus.alphabet.assign(chars.begin(), chars.end());
  return corpus;
}

AddressCorpus AddressCorpus::load(const std::filesystem::path& path) {
  std::vector<std::string> entries;
  for (const std::string& line : core::split_lines(core::read_text_file(path))) {
    if (!line.empty()) entries.push_back(line);
  }
  if (entries.empty()) throw ValidationError("corpus file has no entries: " + path.string());
  return from_entries(std::move(entries));
}

bool AddressCorpus::contains(char32_t cp) const {
  return std::binary_search(alphabet.begin(), alphabet.end(), cp);
}

std::vector<std::u32string> AddressCorpus::grapheme_inventory() const {
  std::set<std::u32string> clusters;
  for (const std::string& entry : entries) {
    for (const std::u32string& g : core::grapheme_clusters(core::utf8_decode(entry))) {
      clusters.insert(g);
    }
  }
  return {clusters.begin(), clusters.end()};
}

}  // namespace signaddr::synthgen
