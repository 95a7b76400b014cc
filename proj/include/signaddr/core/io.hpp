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
#include <string_view>
#include <vector>

namespace signaddr::core {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Splits on '\n'; a trailing newline does not add an empty final line.
std::vector<std::string> split_lines(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view line);
std::vector<std::string> split_on(std::string_view line, char sep);

/// FNV-1a, used for manifest/image fingerprints in determinism checks.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace signaddr::core
