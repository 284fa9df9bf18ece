#include "topofuse/pipeline/experiment.hpp"

#include <algorithm>
#include <system_error>

#include "topofuse/errors.hpp"
#include "topofuse/pipeline/features.hpp"

namespace topofuse::pipeline {

namespace fs = std::filesystem;
using neural::Model;
using neural::NetworkSpec;

neural::NetworkSpec spec_for(neural::Variant variant, const std::vector<Sample>& samples) {
  if (samples.empty()) throw ArgumentError("no samples");
  std::size_t side = 0;
  std::size_t curve_len = 0;
  if (neural::variant_uses_image(variant)) {
    if (!samples.front().image) throw ArgumentError("variant " + neural::variant_name(variant) + " needs images");
    const ImageTensor& image = *samples.front().image;
    if (image.height() != image.width()) throw ArgumentError("images must be square");
    side = image.height();
  }
  if (neural::variant_uses_betti(variant)) {
    if (!samples.front().betti) throw ArgumentError("variant " + neural::variant_name(variant) + " needs curves");
    curve_len = samples.front().betti->size();
  }
  return neural::build_network(variant, side, curve_len);
}

namespace {

template <class T>
neural::NetworkInput<T> to_input(const NetworkSpec& spec, const Sample& s) {
  neural::NetworkInput<T> input;
  if (spec.uses_image()) {
    if (!s.image || s.image->height() != spec.image_side || s.image->width() != spec.image_side) {
      throw ArgumentError("sample " + s.id + " has no " + std::to_string(spec.image_side) + "x" +
                          std::to_string(spec.image_side) + " image");
    }
    neural::NdTensor<T> t{{1, spec.image_side, spec.image_side}, {}};
    t.values.assign(s.image->values().begin(), s.image->values().end());
    input.image = std::move(t);
  }
  if (spec.uses_betti()) {
    if (!s.betti || s.betti->size() != spec.curve_len) {
      throw ArgumentError("sample " + s.id + " has no curve of length " + std::to_string(spec.curve_len));
    }
    neural::NdTensor<T> t{{spec.curve_len}, {}};
    t.values.assign(s.betti->samples.begin(), s.betti->samples.end());
    input.betti = std::move(t);
  }
  return input;
}

template <class T>
neural::Dataset<T> to_dataset(const NetworkSpec& spec, const std::vector<Sample>& samples) {
  neural::Dataset<T> data;
  for (const Sample& s : samples) {
    data.inputs.push_back(to_input<T>(spec, s));
    data.labels.push_back(s.label);
  }
  return data;
}

template <class T>
neural::TrainResult<float> train_quantized(const NetworkSpec& spec, const std::vector<Sample>& train,
                                           const neural::TrainConfig& config) {
  neural::TrainResult<T> result = neural::train<T>(spec, to_dataset<T>(spec, train), config);
  return {neural::convert_params<float>(result.params), std::move(result.loss_history)};
}

// Removes the listed files unless dismissed.
class ArtifactGuard {
 public:
  void track(const fs::path& path) { paths_.push_back(path); }
  void dismiss() { paths_.clear(); }
  ~ArtifactGuard() {
    std::error_code ec;
    for (const fs::path& p : paths_) fs::remove(p, ec);
  }

 private:
  std::vector<fs::path> paths_;
};

}  // namespace

std::vector<int> predict_samples(const Model& model, const std::vector<Sample>& samples) {
  const neural::Network<double> network(model.spec);
  const neural::ParamSet<double> params = neural::convert_params<double>(model.params);
  std::vector<int> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(neural::predict(network, params, to_input<double>(model.spec, s)));
  return out;
}

EvalReport evaluate_model(const Model& model, const std::vector<Sample>& samples) {
  std::vector<int> labels;
  for (const Sample& s : samples) labels.push_back(s.label);
  return evaluate_metrics(predict_samples(model, samples), labels);
}

ExperimentResult run_experiment(std::vector<Sample> samples, const ExperimentConfig& config) {
  config.train.validate();
  if (samples.empty()) throw ArgumentError("no samples");
  const neural::Variant variant = config.variant;

  if (neural::variant_uses_image(variant)) {
    for (const Sample& s : samples) {
      if (!s.image) throw ArgumentError("variant " + neural::variant_name(variant) + " needs images; sample " + s.id + " has none");
    }
  }
  if (neural::variant_uses_betti(variant)) {
    const bool missing = std::any_of(samples.begin(), samples.end(), [](const Sample& s) { return !s.betti; });
    if (missing) extract_curves(samples, config.curve);
  }

  auto [train, holdout] = split_dataset(samples, config.holdout_fraction, config.train.seed);

  NetworkSpec spec = spec_for(variant, samples);
  if (spec.uses_betti()) {
    double peak = 0.0;
    for (const Sample& s : train) {
      for (double v : s.betti->samples) peak = std::max(peak, v);
    }
    spec.betti_scale = peak > 0.0 ? 1.0 / peak : 1.0;
  }

  neural::TrainResult<float> trained = config.train.precision == neural::Precision::kDouble
                                           ? train_quantized<double>(spec, train, config.train)
                                           : train_quantized<float>(spec, train, config.train);

  ExperimentResult result;
  result.model = Model{spec, std::move(trained.params)};
  result.loss_history = std::move(trained.loss_history);
  result.report = evaluate_model(result.model, holdout);
  result.metrics_json = metrics_json(result.report, neural::variant_name(variant), config.train.seed);

  ArtifactGuard guard;
  if (!config.model_path.empty()) {
    guard.track(config.model_path);
    neural::save_model(config.model_path, result.model);
  }
  if (!config.metrics_path.empty()) {
    guard.track(config.metrics_path);
    write_file_atomic(config.metrics_path, result.metrics_json);
  }
  guard.dismiss();
  return result;
}

}  // namespace topofuse::pipeline
