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

#include "signaddr/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "signaddr/core/error.hpp"

namespace signaddr::nn {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'A', 'D'};

template <typename T>
void write_pod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::filesystem::path& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ParseError("truncated checkpoint: " + path.string());
  return v;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write checkpoint: " + path.string());
  out.write(kMagic, 4);
  write_pod<std::uint32_t>(out, kCheckpointVersion);
  const std::string header = ckpt.header.dump();
  write_pod<std::uint64_t>(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(ckpt.tensors.size()));
  for (const auto& [name, tensor] : ckpt.tensors) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.shape().size()));
    for (int d : tensor.shape()) write_pod<std::int32_t>(out, d);
    out.write(reinterpret_cast<const char*>(tensor.data()),
              static_cast<std::streamsize>(tensor.size() * sizeof(float)));
  }
  if (!out) throw ValidationError("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("missing checkpoint: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("not a checkpoint file: " + path.string());
  }
  const auto version = read_pod<std::uint32_t>(in, path);
  if (version != kCheckpointVersion) {
    throw ValidationError("checkpoint version mismatch in " + path.string() + ": found " +
                          std::to_string(version) + ", expected " + std::to_string(kCheckpointVersion));
  }
  Checkpoint ckpt;
  const auto header_len = read_pod<std::uint64_t>(in, path);
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw ParseError("truncated checkpoint header: " + path.string());
  ckpt.header = nlohmann::json::parse(header, nullptr, false);
  if (ckpt.header.is_discarded()) throw ParseError("corrupt checkpoint header: " + path.string());
  const auto count = read_pod<std::uint32_t>(in, path);
  ckpt.tensors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = read_pod<std::uint32_t>(in, path);
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    const auto rank = read_pod<std::uint32_t>(in, path);
    std::vector<int> shape(rank);
    for (auto& d : shape) d = read_pod<std::int32_t>(in, path);
    core::Tensor tensor(shape);
    in.read(reinterpret_cast<char*>(tensor.data()),
            static_cast<std::streamsize>(tensor.size() * sizeof(float)));
    if (!in) throw ParseError("truncated checkpoint tensor '" + name + "': " + path.string());
    ckpt.tensors.emplace_back(std::move(name), std::move(tensor));
  }
  return ckpt;
}

std::vector<std::pair<std::string, core::Tensor>> snapshot_params(const ParamSet& params) {
  std::vector<std::pair<std::string, core::Tensor>> out;
  out.reserve(params.items().size());
  for (const auto& [name, var] : params.items()) out.emplace_back(name, var->value);
  return out;
}

void restore_params(ParamSet& params, const std::vector<std::pair<std::string, core::Tensor>>& tensors) {
  if (tensors.size() != params.items().size()) {
    throw ValidationError("checkpoint parameter count mismatch");
  }
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const auto& [name, tensor] = tensors[i];
    const auto& [expected_name, var] = params.items()[i];
    if (name != expected_name) throw ValidationError("checkpoint parameter order mismatch at " + name);
    if (!tensor.same_shape(var->value)) throw ValidationError("checkpoint shape mismatch for " + name);
    var->value = tensor;
  }
}

}  // namespace signaddr::nn
