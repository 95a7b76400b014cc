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

#include "signaddr/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "signaddr/core/error.hpp"

namespace signaddr::core {

namespace {

// Skips whitespace and '#' comment lines between PGM header tokens.
int read_header_int(std::istream& in, const std::filesystem::path& path) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw ParseError("truncated PGM header: " + path.string());
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    break;
  }
  int value = 0;
  if (!(in >> value)) throw ParseError("bad PGM header token: " + path.string());
  return value;
}

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open image: " + path.string());
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P5") throw ParseError("not a binary PGM (P5): " + path.string());
  const int w = read_header_int(in, path);
  const int h = read_header_int(in, path);
  const int maxval = read_header_int(in, path);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw ParseError("unsupported PGM header in " + path.string());
  }
  in.get();  // single whitespace after maxval
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw ParseError("truncated PGM pixel data: " + path.string());
  }
  Image img(w, h);
  const float scale = 1.0f / static_cast<float>(maxval);
  for (std::size_t i = 0; i < raw.size(); ++i) img.px[i] = static_cast<float>(raw[i]) * scale;
  return img;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0) throw ValidationError("cannot save empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write image: " + path.string());
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> raw(img.px.size());
  for (std::size_t i = 0; i < img.px.size(); ++i) {
    const float v = std::clamp(img.px[i], 0.0f, 1.0f);
    raw[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

Image crop_pixels(const Image& img, int x0, int y0, int w, int h) {
  if (w <= 0 || h <= 0 || x0 < 0 || y0 < 0 || x0 + w > img.width || y0 + h > img.height) {
    throw ValidationError("crop rectangle outside image bounds");
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    const float* src = img.px.data() + static_cast<std::size_t>(y0 + y) * img.width + x0;
    std::copy(src, src + w, out.px.begin() + static_cast<std::size_t>(y) * w);
  }
  return out;
}

Image resize(const Image& img, int new_w, int new_h) {
  if (new_w <= 0 || new_h <= 0) throw ValidationError("resize target must be positive");
  if (new_w == img.width && new_h == img.height) return img;
  Image out(new_w, new_h);
  const float sx = static_cast<float>(img.width) / static_cast<float>(new_w);
  const float sy = static_cast<float>(img.height) / static_cast<float>(new_h);
  for (int y = 0; y < new_h; ++y) {
    const float fy = (static_cast<float>(y) + 0.5f) * sy - 0.5f;
    const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, img.height - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const float wy = std::clamp(fy - static_cast<float>(y0), 0.0f, 1.0f);
    for (int x = 0; x < new_w; ++x) {
      const float fx = (static_cast<float>(x) + 0.5f) * sx - 0.5f;
      const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, img.width - 1);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const float wx = std::clamp(fx - static_cast<float>(x0), 0.0f, 1.0f);
      const float top = img.at(y0, x0) * (1.0f - wx) + img.at(y0, x1) * wx;
      const float bot = img.at(y1, x0) * (1.0f - wx) + img.at(y1, x1) * wx;
      out.at(y, x) = top * (1.0f - wy) + bot * wy;
    }
  }
  return out;
}

}  // namespace signaddr::core
