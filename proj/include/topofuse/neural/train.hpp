#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "topofuse/neural/network.hpp"

namespace topofuse::neural {

enum class OptimizerKind { kSgd, kAdam };
enum class Precision { kSingle, kDouble };

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 30;
  std::size_t batch_size = 16;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  std::uint64_t seed = 0;
  Precision precision = Precision::kSingle;

  /// Throws ArgumentError when a field violates its invariant.
  void validate() const;
};

template <class T>
struct Dataset {
  std::vector<NetworkInput<T>> inputs;
  std::vector<int> labels;

  std::size_t size() const noexcept { return inputs.size(); }
};

template <class T>
struct TrainResult {
  ParamSet<T> params;
  std::vector<double> loss_history;  // mean training loss per epoch
};

/// Adam with the usual moment decay rates, or plain SGD.
template <class T>
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, double learning_rate, const ParamSet<T>& shape_like);

  void step(ParamSet<T>& params, const ParamSet<T>& grads);

 private:
  OptimizerKind kind_;
  double learning_rate_;
  std::uint64_t t_ = 0;
  ParamSet<T> m_;
  ParamSet<T> v_;
};

/// Mini-batch training. One generator seeded with config.seed drives the
/// initialisation and every epoch's shuffle, so equal seeds give equal
/// parameters. Throws TrainingError when the epoch loss is not finite.
template <class T>
TrainResult<T> train(const NetworkSpec& spec, const Dataset<T>& data, const TrainConfig& config,
                     const std::function<void(int epoch, double loss)>& on_epoch = {});

}  // namespace topofuse::neural
