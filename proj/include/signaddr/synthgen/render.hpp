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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "signaddr/core/image.hpp"
#include "signaddr/synthgen/corpus.hpp"

namespace signaddr::synthgen {

inline constexpr int kLineHeight = 64;
inline constexpr int kMaxLineWidth = 600;

/// Rendered text line plus its ground truth. Height is always kLineHeight;
/// width never exceeds kMaxLineWidth.
struct TextLineSample {
  core::Image image;
  std::string text;
};

struct RenderStyle {
  int font_scale = 4;          // glyph cell pixels per bitmap cell, 1..4
  float noise_amplitude = 0;   // additive uniform noise in [-a, a]
  float skew = 0;              // horizontal shear, px of shift per px of height
  /// Final width: pad right to this if narrower, rescale if wider. 0 keeps
  /// the natural width (still capped at kMaxLineWidth).
  int target_width = kMaxLineWidth;
};

/// Deterministic built-in glyph set: each code point gets a fixed 5x11
/// bitmap derived from its value, the same in every atlas. The atlas only
/// fixes which characters are renderable.
class GlyphAtlas {
 public:
  static constexpr int kGlyphCols = 5;
  static constexpr int kGlyphRows = 11;
  static constexpr int kAdvanceCols = 6;  // one blank column between glyphs
  static constexpr int kCellRows = 13;    // one blank row above and below

  explicit GlyphAtlas(std::vector<char32_t> alphabet);
  static GlyphAtlas for_corpus(const AddressCorpus& corpus);

  bool has(char32_t cp) const;
  /// Row-major kGlyphRows x kGlyphCols occupancy bits.
  const std::vector<bool>& bitmap(char32_t cp) const;
  const std::vector<char32_t>& alphabet() const { return alphabet_; }

 private:
  std::vector<char32_t> alphabet_;
  std::vector<std::vector<bool>> bitmaps_;
};

/// White-on-black rendering of `text`, deterministic in (text, seed, style).
TextLineSample render_text_line(const std::string& text, std::uint64_t seed, const RenderStyle& style,
                                const GlyphAtlas& atlas);

struct OcrManifestRow {
  std::string image_path;  // relative to the manifest's directory
  std::string text;
};

/// Uniform-with-replacement sampling from the corpus; sample i uses seed
/// mix(seed, i), so any evaluation order yields identical output.
std::vector<TextLineSample> sample_ocr_dataset(const AddressCorpus& corpus, int n, std::uint64_t seed,
                                               const RenderStyle& style);

/// sample_ocr_dataset + PGM files named line_%05d.pgm + manifest.tsv.
std::vector<OcrManifestRow> generate_ocr_dataset(const AddressCorpus& corpus, int n, std::uint64_t seed,
                                                 const RenderStyle& style,
                                                 const std::filesystem::path& out_dir);

/// Tab-separated {relative_image_path, text}, one row per line.
void write_ocr_manifest(const std::vector<OcrManifestRow>& rows, const std::filesystem::path& path);
std::vector<OcrManifestRow> read_ocr_manifest(const std::filesystem::path& path);

}  // namespace signaddr::synthgen
