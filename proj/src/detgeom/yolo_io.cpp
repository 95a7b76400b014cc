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

#include "signaddr/detgeom/yolo_io.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"

namespace signaddr::detgeom {

namespace {

double parse_double(const std::string& token, const std::filesystem::path& path, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + token + "'");
  }
  return value;
}

int parse_class(const std::string& token, const std::filesystem::path& path, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad class id '" + token + "'");
  }
  return value;
}

BoundingBox parse_box(const std::vector<std::string>& f, std::size_t offset,
                      const std::filesystem::path& path, std::size_t line_no) {
  BoundingBox box;
  box.cx = parse_double(f[offset], path, line_no);
  box.cy = parse_double(f[offset + 1], path, line_no);
  box.w = parse_double(f[offset + 2], path, line_no);
  box.h = parse_double(f[offset + 3], path, line_no);
  if (!box_is_valid(box)) {
    throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                          ": box coordinates out of range");
  }
  return box;
}

std::string format_box_line(int class_id, const BoundingBox& box) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f %.6f", class_id, box.cx, box.cy, box.w, box.h);
  return buf;
}

}  // namespace

std::vector<GroundTruthAnnotation> read_yolo_labels(const std::filesystem::path& path) {
  const std::string content = core::read_text_file(path);
  const std::string image_id = path.stem().string();
  std::vector<GroundTruthAnnotation> out;
  std::size_t line_no = 0;
  for (const std::string& line : core::split_lines(content)) {
    ++line_no;
    const auto fields = core::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 5) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields, found " +
                       std::to_string(fields.size()));
    }
    GroundTruthAnnotation ann;
    ann.class_id = parse_class(fields[0], path, line_no);
    ann.box = parse_box(fields, 1, path, line_no);
    ann.image_id = image_id;
    out.push_back(ann);
  }
  return out;
}

void write_yolo_labels(const std::vector<GroundTruthAnnotation>& annotations,
                       const std::filesystem::path& path) {
  std::string content;
  for (const GroundTruthAnnotation& ann : annotations) {
    validate_box(ann.box);
    content += format_box_line(ann.class_id, ann.box);
    content += '\n';
  }
  core::write_text_file(path, content);
}

std::vector<Detection> read_yolo_predictions(const std::filesystem::path& path) {
  const std::string content = core::read_text_file(path);
  std::vector<Detection> out;
  std::size_t line_no = 0;
  for (const std::string& line : core::split_lines(content)) {
    ++line_no;
    const auto fields = core::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 6) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 6 fields, found " +
                       std::to_string(fields.size()));
    }
    Detection det;
    det.class_id = parse_class(fields[0], path, line_no);
    det.box = parse_box(fields, 1, path, line_no);
    det.confidence = parse_double(fields[5], path, line_no);
    if (det.confidence < 0.0 || det.confidence > 1.0) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": confidence out of [0,1]");
    }
    out.push_back(det);
  }
  return out;
}

void write_yolo_predictions(const std::vector<Detection>& detections,
                            const std::filesystem::path& path) {
  std::string content;
  for (const Detection& det : detections) {
    validate_box(det.box);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s %.6f", format_box_line(det.class_id, det.box).c_str(),
                  det.confidence);
    content += buf;
    content += '\n';
  }
  core::write_text_file(path, content);
}

}  // namespace signaddr::detgeom
