#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "topofuse/neural/network.hpp"

namespace topofuse::neural {

/// Model file layout (all integers little-endian):
///   "TDAN" | u16 version | u32 descriptor length | descriptor text |
///   per parametric layer, in position order: weights then biases as f32.
inline constexpr char kModelMagic[4] = {'T', 'D', 'A', 'N'};
inline constexpr std::uint16_t kModelVersion = 1;

struct Model {
  NetworkSpec spec;
  ParamSet<float> params;
};

/// Line-oriented text form of a NetworkSpec, e.g. "deep conv2d 16 3".
std::string describe_spec(const NetworkSpec& spec);
NetworkSpec parse_spec(const std::string& descriptor);

std::vector<std::uint8_t> encode_model(const Model& model);
/// Throws FormatError on bad magic, unknown version, truncation or trailing bytes.
Model decode_model(const std::vector<std::uint8_t>& bytes);

/// Written via a temporary file and rename.
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace topofuse::neural
