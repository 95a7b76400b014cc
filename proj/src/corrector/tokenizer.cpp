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

#include "signaddr/corrector/tokenizer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "signaddr/core/error.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::corrector {

namespace {

std::vector<std::string> char_pieces(const std::vector<std::string>& corpus) {
  std::set<std::string> chars;
  for (const std::string& entry : corpus) {
    for (char32_t cp : core::utf8_decode(entry)) chars.insert(core::utf8_encode(cp));
  }
  if (chars.empty()) throw ValidationError("tokenizer corpus is empty");
  return {chars.begin(), chars.end()};
}

}  // namespace

Tokenizer Tokenizer::fit_character(const std::vector<std::string>& corpus) {
  Tokenizer t;
  t.mode_ = TokenizerMode::kCharacter;
  t.pieces_ = char_pieces(corpus);
  return t;
}

Tokenizer Tokenizer::fit_subword(const std::vector<std::string>& corpus, int merges) {
  Tokenizer t;
  t.mode_ = TokenizerMode::kSubword;
  t.pieces_ = char_pieces(corpus);

  // Work on the corpus as sequences of pieces; repeatedly merge the most
  // frequent adjacent pair (ties resolved lexicographically).
  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(corpus.size());
  for (const std::string& entry : corpus) {
    std::vector<std::string> seq;
    for (char32_t cp : core::utf8_decode(entry)) seq.push_back(core::utf8_encode(cp));
    sequences.push_back(std::move(seq));
  }
  for (int round = 0; round < merges; ++round) {
    std::map<std::pair<std::string, std::string>, long> counts;
    for (const auto& seq : sequences) {
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        ++counts[{seq[i], seq[i + 1]}];
      }
    }
    std::pair<std::string, std::string> best;
    long best_count = 0;
    for (const auto& [pair, count] : counts) {
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    }
    if (best_count < 2) break;  // nothing left worth merging
    t.merges_.push_back(best);
    const std::string merged = best.first + best.second;
    t.pieces_.push_back(merged);
    for (auto& seq : sequences) {
      std::vector<std::string> next;
      next.reserve(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == best.first && seq[i + 1] == best.second) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(seq[i]);
        }
      }
      seq = std::move(next);
    }
  }
  return t;
}

int Tokenizer::piece_id(const std::string& piece) const {
  const auto it = std::find(pieces_.begin(), pieces_.end(), piece);
  if (it == pieces_.end()) return -1;
  return kSpecialCount + static_cast<int>(it - pieces_.begin());
}

std::vector<int> Tokenizer::encode(const std::string& text) const {
  std::vector<std::string> seq;
  for (char32_t cp : core::utf8_decode(text)) seq.push_back(core::utf8_encode(cp));
  if (mode_ == TokenizerMode::kSubword) {
    for (const auto& [left, right] : merges_) {
      std::vector<std::string> next;
      next.reserve(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == left && seq[i + 1] == right) {
          next.push_back(left + right);
          ++i;
        } else {
          next.push_back(seq[i]);
        }
      }
      seq = std::move(next);
    }
  }
  std::vector<int> ids;
  ids.reserve(seq.size());
  for (const std::string& piece : seq) {
    const int id = piece_id(piece);
    ids.push_back(id >= 0 ? id : kUnknown);
  }
  return ids;
}

std::string Tokenizer::decode(const std::vector<int>& ids) const {
  std::string out;
  for (int id : ids) {
    if (id < kSpecialCount) continue;
    const int index = id - kSpecialCount;
    if (index >= static_cast<int>(pieces_.size())) {
      throw ValidationError("token id out of range: " + std::to_string(id));
    }
    out += pieces_[static_cast<std::size_t>(index)];
  }
  return out;
}

nlohmann::json Tokenizer::to_json() const {
  nlohmann::json j;
  j["mode"] = mode_ == TokenizerMode::kCharacter ? "character" : "subword";
  j["pieces"] = pieces_;
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [a, b] : merges_) merges.push_back({a, b});
  j["merges"] = merges;
  return j;
}

Tokenizer Tokenizer::from_json(const nlohmann::json& j) {
  Tokenizer t;
  t.mode_ = j.at("mode").get<std::string>() == "subword" ? TokenizerMode::kSubword
                                                         : TokenizerMode::kCharacter;
  t.pieces_ = j.at("pieces").get<std::vector<std::string>>();
  for (const auto& pair : j.at("merges")) {
    t.merges_.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  }
  return t;
}

}  // namespace signaddr::corrector
