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

namespace signaddr::corrector {

enum class TokenizerMode { kCharacter, kSubword };

/// Token <-> id bijection with reserved specials. Character mode maps one
/// code point per token; subword mode applies greedy pair merges fitted on
/// the corpus (byte-pair style over code points). Any in-vocabulary string
/// round-trips exactly; unknown characters map to the unknown token.
class Tokenizer {
 public:
  static constexpr int kPad = 0;
  static constexpr int kStart = 1;
  static constexpr int kEnd = 2;
  static constexpr int kUnknown = 3;
  static constexpr int kSpecialCount = 4;

  static Tokenizer fit_character(const std::vector<std::string>& corpus);
  static Tokenizer fit_subword(const std::vector<std::string>& corpus, int merges);

  TokenizerMode mode() const { return mode_; }
  int vocab_size() const { return kSpecialCount + static_cast<int>(pieces_.size()); }

  std::vector<int> encode(const std::string& text) const;
  /// Concatenates pieces; special ids decode to nothing.
  std::string decode(const std::vector<int>& ids) const;

  nlohmann::json to_json() const;
  static Tokenizer from_json(const nlohmann::json& j);

 private:
  TokenizerMode mode_ = TokenizerMode::kCharacter;
  std::vector<std::string> pieces_;                          // id - kSpecialCount -> piece
  std::vector<std::pair<std::string, std::string>> merges_;  // subword mode, in fit order
  int piece_id(const std::string& piece) const;              // -1 when absent
};

}  // namespace signaddr::corrector
