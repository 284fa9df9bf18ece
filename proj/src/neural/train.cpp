#include "topofuse/neural/train.hpp"

#include <cmath>
#include <numeric>

#include "topofuse/errors.hpp"
#include "topofuse/random.hpp"

namespace topofuse::neural {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ArgumentError("learning rate must be a finite non-negative number");
  }
  if (epochs < 1) throw ArgumentError("epochs must be positive");
  if (batch_size < 1) throw ArgumentError("batch size must be positive");
}

template <class T>
Optimizer<T>::Optimizer(OptimizerKind kind, double learning_rate, const ParamSet<T>& shape_like)
    : kind_(kind), learning_rate_(learning_rate), m_(shape_like), v_(shape_like) {
  m_.fill(T{0});
  v_.fill(T{0});
}

template <class T>
void Optimizer<T>::step(ParamSet<T>& params, const ParamSet<T>& grads) {
  const T lr = static_cast<T>(learning_rate_);
  if (kind_ == OptimizerKind::kSgd) {
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
      auto update = [&](std::vector<T>& p, const std::vector<T>& g) {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * g[i];
      };
      update(params.layers[l].weight, grads.layers[l].weight);
      update(params.layers[l].bias, grads.layers[l].bias);
    }
    return;
  }

  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEpsilon = 1e-8;
  ++t_;
  const T b1 = static_cast<T>(kBeta1);
  const T b2 = static_cast<T>(kBeta2);
  const T eps = static_cast<T>(kEpsilon);
  const T correction1 = static_cast<T>(1.0 - std::pow(kBeta1, static_cast<double>(t_)));
  const T correction2 = static_cast<T>(1.0 - std::pow(kBeta2, static_cast<double>(t_)));
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto update = [&](std::vector<T>& p, const std::vector<T>& g, std::vector<T>& m, std::vector<T>& v) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        m[i] = b1 * m[i] + (T{1} - b1) * g[i];
        v[i] = b2 * v[i] + (T{1} - b2) * g[i] * g[i];
        const T m_hat = m[i] / correction1;
        const T v_hat = v[i] / correction2;
        p[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
      }
    };
    update(params.layers[l].weight, grads.layers[l].weight, m_.layers[l].weight, v_.layers[l].weight);
    update(params.layers[l].bias, grads.layers[l].bias, m_.layers[l].bias, v_.layers[l].bias);
  }
}

template <class T>
TrainResult<T> train(const NetworkSpec& spec, const Dataset<T>& data, const TrainConfig& config,
                     const std::function<void(int, double)>& on_epoch) {
  config.validate();
  if (data.size() == 0) throw ArgumentError("training set is empty");
  if (data.labels.size() != data.size()) throw ArgumentError("label count does not match input count");

  const Network<T> network(spec);
  Rng rng(config.seed);
  TrainResult<T> result;
  result.params = init_params<T>(spec, rng.next());
  Optimizer<T> optimizer(config.optimizer, config.learning_rate, result.params);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<NetworkInput<T>> batch;
  std::vector<int> labels;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double weighted_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      labels.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(data.inputs[order[i]]);
        labels.push_back(data.labels[order[i]]);
      }
      const LossAndGrads<T> lg = network.loss_and_grads(result.params, batch, labels);
      if (!std::isfinite(static_cast<double>(lg.loss))) {
        throw TrainingError(epoch, "loss diverged to a non-finite value");
      }
      weighted_loss += static_cast<double>(lg.loss) * static_cast<double>(end - start);
      optimizer.step(result.params, lg.grads);
    }
    const double epoch_loss = weighted_loss / static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss)) throw TrainingError(epoch, "loss diverged to a non-finite value");
    result.loss_history.push_back(epoch_loss);
    if (on_epoch) on_epoch(epoch, epoch_loss);
  }
  return result;
}

template class Optimizer<float>;
template class Optimizer<double>;
template TrainResult<float> train<float>(const NetworkSpec&, const Dataset<float>&, const TrainConfig&,
                                         const std::function<void(int, double)>&);
template TrainResult<double> train<double>(const NetworkSpec&, const Dataset<double>&, const TrainConfig&,
                                           const std::function<void(int, double)>&);

}  // namespace topofuse::neural
