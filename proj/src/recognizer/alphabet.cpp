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

#include "signaddr/recognizer/alphabet.hpp"

#include <algorithm>
#include <set>

#include "signaddr/core/error.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::recognizer {

Alphabet::Alphabet(std::vector<char32_t> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
  if (symbols_.empty()) throw ValidationError("alphabet has no symbols");
}

Alphabet Alphabet::from_corpus(const synthgen::AddressCorpus& corpus) {
  return Alphabet(corpus.alphabet);
}

Alphabet Alphabet::from_texts(const std::vector<std::string>& texts) {
  std::set<char32_t> chars;
  for (const std::string& text : texts) {
    for (char32_t cp : core::utf8_decode(text)) chars.insert(cp);
  }
  return Alphabet(std::vector<char32_t>(chars.begin(), chars.end()));
}

bool Alphabet::contains(char32_t cp) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), cp);
}

int Alphabet::id_of(char32_t cp) const {
  const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), cp);
  if (it == symbols_.end() || *it != cp) {
    throw ValidationError("character not in alphabet: " + core::utf8_encode(cp));
  }
  return static_cast<int>(it - symbols_.begin()) + 1;
}

char32_t Alphabet::symbol(int id) const {
  if (id < 1 || id > static_cast<int>(symbols_.size())) {
    throw ValidationError("symbol id out of range: " + std::to_string(id));
  }
  return symbols_[static_cast<std::size_t>(id - 1)];
}

std::vector<int> Alphabet::encode(const std::string& text) const {
  std::vector<int> ids;
  for (char32_t cp : core::utf8_decode(text)) ids.push_back(id_of(cp));
  return ids;
}

std::string Alphabet::decode(const std::vector<int>& ids) const {
  std::vector<char32_t> cps;
  cps.reserve(ids.size());
  for (int id : ids) cps.push_back(symbol(id));
  return core::utf8_encode(cps);
}

nlohmann::json Alphabet::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (char32_t cp : symbols_) arr.push_back(static_cast<std::uint32_t>(cp));
  return arr;
}

Alphabet Alphabet::from_json(const nlohmann::json& j) {
  std::vector<char32_t> symbols;
  for (const auto& v : j) symbols.push_back(static_cast<char32_t>(v.get<std::uint32_t>()));
  return Alphabet(std::move(symbols));
}

}  // namespace signaddr::recognizer
