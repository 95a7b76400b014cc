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

#include <filesystem>
#include <string>
#include <vector>

namespace signaddr::synthgen {

/// Raw address text corpus. The alphabet is exactly the set of code points
/// occurring in the entries, sorted ascending.
struct AddressCorpus {
  std::vector<std::string> entries;
  std::vector<char32_t> alphabet;

  static AddressCorpus from_entries(std::vector<std::string> entries);
  /// One entry per line; blank lines are skipped.
  static AddressCorpus load(const std::filesystem::path& path);

  bool contains(char32_t cp) const;
  /// Distinct grapheme clusters appearing in the entries (for grapheme-unit
  /// error injection).
  std::vector<std::u32string> grapheme_inventory() const;
};

}  // namespace signaddr::synthgen
