#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topofuse/neural/network.hpp"

namespace topofuse::neural {

struct GradCheckOptions {
  double epsilon = 1e-6;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  /// Denominator floor: the relative error of a coordinate is
  /// |analytic - numeric| / max(|analytic|, |numeric|, floor).
  double floor = 1e-4;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  /// Coordinates whose +/- epsilon probes crossed a relu or pooling kink.
  std::size_t excluded = 0;
};

/// Compares backprop gradients with central differences on a seeded subsample
/// of parameter coordinates (all of them when there are fewer than samples).
GradCheckReport grad_check(const NetworkSpec& spec, const ParamSet<double>& params,
                           const std::vector<NetworkInput<double>>& inputs, const std::vector<int>& labels,
                           const GradCheckOptions& options = {});

}  // namespace topofuse::neural
