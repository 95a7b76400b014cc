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
#include <string_view>
#include <vector>

namespace signaddr::core {

/// Decodes UTF-8 into code points. Throws ParseError on malformed input.
std::vector<char32_t> utf8_decode(std::string_view text);

std::string utf8_encode(const std::vector<char32_t>& cps);
std::string utf8_encode(char32_t cp);

/// True for code points that extend the preceding base character: generic
/// combining diacritics plus the Bengali-block dependent signs (vowel signs,
/// nukta, virama, candrabindu family) and ZWJ/ZWNJ.
bool is_combining_mark(char32_t cp);

/// Punctuation test used by strip_punct: ASCII punctuation, the general
/// punctuation block, and the danda/double danda.
bool is_punctuation(char32_t cp);

/// Approximate grapheme segmentation: a cluster is a base code point plus any
/// run of combining marks; a virama or ZWJ additionally glues the following
/// consonant into the cluster (covers Bengali conjuncts).
std::vector<std::u32string> grapheme_clusters(const std::vector<char32_t>& cps);

}  // namespace signaddr::core
