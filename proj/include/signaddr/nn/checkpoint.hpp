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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "signaddr/core/tensor.hpp"
#include "signaddr/nn/layers.hpp"

namespace signaddr::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Versioned binary container: JSON header (kind, config, vocabularies)
/// followed by raw float32 tensors. Round-trips are bit-exact.
struct Checkpoint {
  nlohmann::json header;
  std::vector<std::pair<std::string, core::Tensor>> tensors;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Copies parameter values into a checkpoint tensor list / back out.
std::vector<std::pair<std::string, core::Tensor>> snapshot_params(const ParamSet& params);
void restore_params(ParamSet& params, const std::vector<std::pair<std::string, core::Tensor>>& tensors);

}  // namespace signaddr::nn
