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

#include "signaddr/synthgen/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/core/utf8.hpp"

namespace signaddr::synthgen {

namespace {

constexpr std::uint64_t kAtlasSeedTag = 0x61746C6173ULL;  // "atlas"

std::vector<bool> make_bitmap(char32_t cp) {
  const int cells = GlyphAtlas::kGlyphCols * GlyphAtlas::kGlyphRows;
  std::vector<bool> bits(static_cast<std::size_t>(cells), false);
  if (cp == U' ') return bits;  // space renders blank
  core::Rng rng(core::Rng::mix(kAtlasSeedTag, cp));
  int on = 0;
  for (auto&& bit : bits) {
    if (rng.uniform() < 0.45) {
      bit = true;
      ++on;
    }
  }
  // Keep every glyph visibly non-empty and non-solid.
  std::size_t cursor = static_cast<std::size_t>(cp) % bits.size();
  while (on < 8) {
    if (!bits[cursor]) {
      bits[cursor] = true;
      ++on;
    }
    cursor = (cursor + 7) % bits.size();
  }
  if (on == cells) {
    bits[bits.size() - 1] = false;
  }
  return bits;
}

}  // namespace

GlyphAtlas::GlyphAtlas(std::vector<char32_t> alphabet) : alphabet_(std::move(alphabet)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  bitmaps_.reserve(alphabet_.size());
  for (char32_t cp : alphabet_) bitmaps_.push_back(make_bitmap(cp));
}

GlyphAtlas GlyphAtlas::for_corpus(const AddressCorpus& corpus) { return GlyphAtlas(corpus.alphabet); }

bool GlyphAtlas::has(char32_t cp) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), cp);
}

const std::vector<bool>& GlyphAtlas::bitmap(char32_t cp) const {
  const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), cp);
  if (it == alphabet_.end() || *it != cp) {
    throw ValidationError("glyph not in atlas: U+" + std::to_string(static_cast<std::uint32_t>(cp)));
  }
  return bitmaps_[static_cast<std::size_t>(it - alphabet_.begin())];
}

TextLineSample render_text_line(const std::string& text, std::uint64_t seed, const RenderStyle& style,
                                const GlyphAtlas& atlas) {
  if (text.empty()) throw DomainError("cannot render empty text");
  if (style.font_scale < 1 || style.font_scale > 4) {
    throw ValidationError("font_scale must be in 1..4");
  }
  const std::vector<char32_t> cps = core::utf8_decode(text);

  std::string unknown;
  for (char32_t cp : cps) {
    if (!atlas.has(cp)) unknown += core::utf8_encode(cp) + " ";
  }
  if (!unknown.empty()) {
    throw ValidationError("characters missing from glyph atlas: " + unknown);
  }

  const int s = style.font_scale;
  const int advance = GlyphAtlas::kAdvanceCols * s;
  const int skew_reach = static_cast<int>(std::ceil(std::abs(style.skew) * (kLineHeight / 2.0f)));
  const int margin = s + skew_reach;
  const int natural_width = 2 * margin + static_cast<int>(cps.size()) * advance;
  const int band_top = (kLineHeight - GlyphAtlas::kCellRows * s) / 2 + s;

  core::Image img(natural_width, kLineHeight);
  for (std::size_t ci = 0; ci < cps.size(); ++ci) {
    const std::vector<bool>& bits = atlas.bitmap(cps[ci]);
    const int x_base = margin + static_cast<int>(ci) * advance;
    for (int gy = 0; gy < GlyphAtlas::kGlyphRows; ++gy) {
      for (int gx = 0; gx < GlyphAtlas::kGlyphCols; ++gx) {
        if (!bits[static_cast<std::size_t>(gy * GlyphAtlas::kGlyphCols + gx)]) continue;
        for (int dy = 0; dy < s; ++dy) {
          const int y = band_top + gy * s + dy;
          const int shift =
              static_cast<int>(std::lround(style.skew * (static_cast<float>(y) - kLineHeight / 2.0f)));
          for (int dx = 0; dx < s; ++dx) {
            const int x = x_base + gx * s + dx + shift;
            if (x >= 0 && x < img.width && y >= 0 && y < img.height) img.at(y, x) = 1.0f;
          }
        }
      }
    }
  }

  if (style.noise_amplitude > 0.0f) {
    core::Rng rng(seed);
    for (float& p : img.px) {
      p = std::clamp(p + static_cast<float>(rng.uniform(-style.noise_amplitude, style.noise_amplitude)),
                     0.0f, 1.0f);
    }
  }

  int target = style.target_width;
  if (target < 0 || target > kMaxLineWidth) throw ValidationError("target_width out of range");
  if (target == 0) {
    target = std::min(natural_width, kMaxLineWidth);
  }
  if (img.width > target) {
    img = core::resize(img, target, kLineHeight);
  } else if (img.width < target) {
    core::Image padded(target, kLineHeight);
    for (int y = 0; y < kLineHeight; ++y) {
      std::copy(img.px.begin() + static_cast<std::size_t>(y) * img.width,
                img.px.begin() + static_cast<std::size_t>(y + 1) * img.width,
                padded.px.begin() + static_cast<std::size_t>(y) * target);
    }
    img = std::move(padded);
  }
  return TextLineSample{std::move(img), text};
}

std::vector<TextLineSample> sample_ocr_dataset(const AddressCorpus& corpus, int n, std::uint64_t seed,
                                               const RenderStyle& style) {
  if (n < 1) throw DomainError("dataset size must be at least 1");
  if (corpus.entries.empty()) throw ValidationError("cannot sample from an empty corpus");
  const GlyphAtlas atlas = GlyphAtlas::for_corpus(corpus);
  std::vector<TextLineSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t sample_seed = core::Rng::mix(seed, static_cast<std::uint64_t>(i));
    core::Rng pick_rng(sample_seed);
    const std::string& text =
        corpus.entries[static_cast<std::size_t>(pick_rng.uniform_int(0, static_cast<std::int64_t>(corpus.entries.size()) - 1))];
    samples.push_back(render_text_line(text, core::Rng::mix(sample_seed, 1), style, atlas));
  }
  return samples;
}

std::vector<OcrManifestRow> generate_ocr_dataset(const AddressCorpus& corpus, int n, std::uint64_t seed,
                                                 const RenderStyle& style,
                                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<TextLineSample> samples = sample_ocr_dataset(corpus, n, seed, style);
  std::vector<OcrManifestRow> rows;
  rows.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "line_%05zu.pgm", i);
    core::save_pgm(samples[i].image, out_dir / name);
    rows.push_back({name, samples[i].text});
  }
  write_ocr_manifest(rows, out_dir / "manifest.tsv");
  return rows;
}

void write_ocr_manifest(const std::vector<OcrManifestRow>& rows, const std::filesystem::path& path) {
  std::string out;
  for (const OcrManifestRow& row : rows) {
    out += row.image_path;
    out += '\t';
    out += row.text;
    out += '\n';
  }
  core::write_text_file(path, out);
}

std::vector<OcrManifestRow> read_ocr_manifest(const std::filesystem::path& path) {
  std::vector<OcrManifestRow> rows;
  std::size_t line_no = 0;
  for (const std::string& line : core::split_lines(core::read_text_file(path))) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = core::split_on(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 2 tab-separated fields");
    }
    rows.push_back({fields[0], fields[1]});
  }
  return rows;
}

}  // namespace signaddr::synthgen
