#include "topofuse/neural/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topofuse/errors.hpp"
#include "topofuse/random.hpp"

namespace topofuse::neural {

namespace {

struct Coordinate {
  std::size_t layer;
  bool bias;
  std::size_t index;
};

}  // namespace

GradCheckReport grad_check(const NetworkSpec& spec, const ParamSet<double>& params,
                           const std::vector<NetworkInput<double>>& inputs, const std::vector<int>& labels,
                           const GradCheckOptions& options) {
  if (!(options.epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  const Network<double> network(spec);
  const LossAndGrads<double> analytic = network.loss_and_grads(params, inputs, labels);

  std::vector<Coordinate> all;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (std::size_t i = 0; i < params.layers[l].weight.size(); ++i) all.push_back({l, false, i});
    for (std::size_t i = 0; i < params.layers[l].bias.size(); ++i) all.push_back({l, true, i});
  }
  Rng rng(options.seed);
  rng.shuffle(std::span<Coordinate>(all));
  if (all.size() > options.samples) all.resize(options.samples);

  auto signatures = [&](const ParamSet<double>& p) {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(inputs.size());
    for (const auto& input : inputs) out.push_back(network.kink_signature(p, input));
    return out;
  };
  const auto baseline = signatures(params);

  GradCheckReport report;
  ParamSet<double> probe = params;
  for (const Coordinate& c : all) {
    auto& slot = c.bias ? probe.layers[c.layer].bias[c.index] : probe.layers[c.layer].weight[c.index];
    const double original = slot;

    slot = original + options.epsilon;
    const double plus = network.loss(probe, inputs, labels);
    const bool plus_smooth = signatures(probe) == baseline;
    slot = original - options.epsilon;
    const double minus = network.loss(probe, inputs, labels);
    const bool minus_smooth = signatures(probe) == baseline;
    slot = original;

    if (!plus_smooth || !minus_smooth) {
      ++report.excluded;
      continue;
    }
    const double numeric = (plus - minus) / (2.0 * options.epsilon);
    const double exact = c.bias ? analytic.grads.layers[c.layer].bias[c.index]
                                : analytic.grads.layers[c.layer].weight[c.index];
    const double scale = std::max({std::abs(exact), std::abs(numeric), options.floor});
    report.max_relative_error = std::max(report.max_relative_error, std::abs(exact - numeric) / scale);
    ++report.checked;
  }
  return report;
}

}  // namespace topofuse::neural
