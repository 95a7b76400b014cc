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

#include <json.hpp>

#include "signaddr/synthgen/corpus.hpp"

namespace signaddr::recognizer {

/// Symbol table shared by both recognizer frameworks. Id 0 is the reserved
/// blank; text symbols occupy 1..n; the attention decoder's start/end markers
/// sit after the text symbols.
class Alphabet {
 public:
  static constexpr int kBlank = 0;

  explicit Alphabet(std::vector<char32_t> symbols);
  static Alphabet from_corpus(const synthgen::AddressCorpus& corpus);
  static Alphabet from_texts(const std::vector<std::string>& texts);

  /// Blank plus text symbols (the CTC output arity).
  int size() const { return static_cast<int>(symbols_.size()) + 1; }
  /// size() plus start and end markers (the attention vocabulary).
  int size_with_markers() const { return size() + 2; }
  int start_id() const { return size(); }
  int end_id() const { return size() + 1; }

  bool contains(char32_t cp) const;
  int id_of(char32_t cp) const;  // throws ValidationError on unknown
  char32_t symbol(int id) const;

  /// Text to non-blank symbol ids and back.
  std::vector<int> encode(const std::string& text) const;
  std::string decode(const std::vector<int>& ids) const;

  const std::vector<char32_t>& symbols() const { return symbols_; }

  nlohmann::json to_json() const;
  static Alphabet from_json(const nlohmann::json& j);

 private:
  std::vector<char32_t> symbols_;  // sorted, unique, blank-free
};

}  // namespace signaddr::recognizer
