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
#include <vector>

namespace signaddr::core {

/// Grayscale raster, luminance in [0, 1], row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<float> px;

  Image() = default;
  Image(int w, int h) : width(w), height(h), px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0f) {}

  float& at(int y, int x) { return px[static_cast<std::size_t>(y) * width + x]; }
  float at(int y, int x) const { return px[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary PGM (P5, 8-bit) I/O. Values are quantized to 255 levels on write.
Image load_pgm(const std::filesystem::path& path);
void save_pgm(const Image& img, const std::filesystem::path& path);

/// Pixel-rectangle crop; the rectangle must lie inside the image.
Image crop_pixels(const Image& img, int x0, int y0, int w, int h);

/// Bilinear resize.
Image resize(const Image& img, int new_w, int new_h);

}  // namespace signaddr::core
