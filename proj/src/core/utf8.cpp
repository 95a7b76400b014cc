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

#include "signaddr/core/utf8.hpp"

#include "signaddr/core/error.hpp"

namespace signaddr::core {

std::vector<char32_t> utf8_decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    int extra = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw ParseError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + static_cast<std::size_t>(extra) >= text.size() && extra > 0) {
      throw ParseError("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (int k = 1; k <= extra; ++k) {
      const unsigned char b = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) throw ParseError("invalid UTF-8 continuation at offset " + std::to_string(i + static_cast<std::size_t>(k)));
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(1 + extra);
  }
  return out;
}

std::string utf8_encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += utf8_encode(cp);
  return out;
}

bool is_combining_mark(char32_t cp) {
  if (cp >= 0x0300 && cp <= 0x036F) return true;  // combining diacriticals
  if (cp >= 0x0981 && cp <= 0x0983) return true;  // candrabindu, anusvara, visarga
  if (cp == 0x09BC) return true;                  // nukta
  if (cp >= 0x09BE && cp <= 0x09C4) return true;  // vowel signs
  if (cp == 0x09C7 || cp == 0x09C8) return true;
  if (cp >= 0x09CB && cp <= 0x09CD) return true;  // o, au, virama
  if (cp == 0x09D7) return true;                  // au length mark
  if (cp == 0x200C || cp == 0x200D) return true;  // ZWNJ, ZWJ
  return false;
}

bool is_punctuation(char32_t cp) {
  static const std::string_view ascii = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
  if (cp < 0x80) return ascii.find(static_cast<char>(cp)) != std::string_view::npos;
  if (cp == 0x0964 || cp == 0x0965) return true;  // danda, double danda
  if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, bullets
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  return false;
}

std::vector<std::u32string> grapheme_clusters(const std::vector<char32_t>& cps) {
  std::vector<std::u32string> clusters;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::u32string cluster;
    cluster.push_back(cps[i++]);
    for (;;) {
      if (i < cps.size() && is_combining_mark(cps[i])) {
        cluster.push_back(cps[i++]);
        continue;
      }
      // virama or ZWJ binds the next base character (conjunct formation)
      if (i < cps.size() && !cluster.empty() &&
          (cluster.back() == 0x09CD || cluster.back() == 0x200D)) {
        cluster.push_back(cps[i++]);
        continue;
      }
      break;
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

}  // namespace signaddr::core
