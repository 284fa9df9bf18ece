#pragma once

#include <vector>

#include "topofuse/neural/network.hpp"
#include "topofuse/random.hpp"

namespace topofuse::testing {

/// Seeded random inputs matching whatever inputs spec declares.
template <class T>
std::vector<neural::NetworkInput<T>> random_inputs(const neural::NetworkSpec& spec, std::size_t count,
                                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<neural::NetworkInput<T>> inputs(count);
  for (auto& input : inputs) {
    if (spec.uses_image()) {
      neural::NdTensor<T> image{{spec.image_side, spec.image_side, 1}, {}};
      for (std::size_t i = 0; i < spec.image_side * spec.image_side; ++i) {
        image.values.push_back(static_cast<T>(rng.uniform()));
      }
      input.image = std::move(image);
    }
    if (spec.uses_betti()) {
      neural::NdTensor<T> betti{{spec.curve_len}, {}};
      for (std::size_t i = 0; i < spec.curve_len; ++i) betti.values.push_back(static_cast<T>(3.0 * rng.uniform()));
      input.betti = std::move(betti);
    }
  }
  return inputs;
}

/// init_params plus small random biases, so bias gradients are exercised
/// away from the all-zero starting point.
inline neural::ParamSet<double> jittered_params(const neural::NetworkSpec& spec, std::uint64_t seed) {
  auto params = neural::init_params<double>(spec, seed);
  Rng rng(seed + 1);
  for (auto& layer : params.layers) {
    for (double& b : layer.bias) b = 0.1 * rng.normal();
  }
  return params;
}

}  // namespace topofuse::testing
