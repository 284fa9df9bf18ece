#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace topofuse::neural {

template <class T>
struct NdTensor {
  std::vector<std::size_t> shape;
  std::vector<T> values;

  std::size_t size() const noexcept { return values.size(); }
};

enum class LayerKind { kConv2d, kMaxPool2, kDense, kRelu, kFlatten, kConcatInput, kSoftmax };

/// Which network input a layer refers to.
enum class InputName { kImage, kBetti };

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  std::size_t filters = 0;  // conv2d
  std::size_t kernel = 0;   // conv2d, odd
  std::size_t units = 0;    // dense
  InputName input = InputName::kBetti;  // concat_input

  static LayerSpec conv2d(std::size_t filters, std::size_t kernel = 3) {
    return {LayerKind::kConv2d, filters, kernel, 0, InputName::kBetti};
  }
  static LayerSpec maxpool2() { return {LayerKind::kMaxPool2}; }
  static LayerSpec dense(std::size_t units) { return {LayerKind::kDense, 0, 0, units, InputName::kBetti}; }
  static LayerSpec relu() { return {LayerKind::kRelu}; }
  static LayerSpec flatten() { return {LayerKind::kFlatten}; }
  static LayerSpec concat_input(InputName input) { return {LayerKind::kConcatInput, 0, 0, 0, input}; }
  static LayerSpec softmax() { return {LayerKind::kSoftmax}; }

  bool has_params() const noexcept { return kind == LayerKind::kConv2d || kind == LayerKind::kDense; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

enum class Variant { kBase, kTda1, kTda12, kTda123 };

std::string variant_name(Variant variant);
Variant parse_variant(const std::string& name);
bool variant_uses_image(Variant variant);
bool variant_uses_betti(Variant variant);

/// Two-stream classifier description.
///
/// The deep stream consumes the image (side x side x 1) and the topological
/// stream consumes the Betti curve; a stream is present iff its input is
/// declared (non-zero extent) and an empty layer list passes the input
/// through. Fusion starts from the concatenation deep ++ topo and must end
/// in softmax over two classes.
///
/// Layer positions number deep, then topo, then fusion layers from 0.
struct NetworkSpec {
  std::string name = "custom";
  std::size_t image_side = 0;
  std::size_t curve_len = 0;
  /// Multiplier applied to the Betti input before it reaches any layer.
  double betti_scale = 1.0;
  std::vector<LayerSpec> deep_stream;
  std::vector<LayerSpec> topo_stream;
  std::vector<LayerSpec> fusion;

  bool uses_image() const noexcept { return image_side > 0; }
  bool uses_betti() const noexcept { return curve_len > 0; }
  std::size_t layer_count() const noexcept { return deep_stream.size() + topo_stream.size() + fusion.size(); }
  const LayerSpec& layer(std::size_t position) const;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Builds one of the four reference architectures. image_side must be a
/// positive multiple of 16 when the variant has a deep stream.
NetworkSpec build_network(Variant variant, std::size_t image_side, std::size_t curve_len);

/// Output shape of every layer position. Throws ShapeError naming the first
/// position whose input cannot be consumed.
std::vector<std::vector<std::size_t>> infer_shapes(const NetworkSpec& spec);

/// Width of the activation entering the first fusion layer.
std::size_t fusion_input_width(const NetworkSpec& spec);

template <class T>
struct LayerParams {
  std::vector<T> weight;
  std::vector<T> bias;

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

/// Weights and biases keyed by layer position; parameter-free layers hold
/// empty arrays.
template <class T>
struct ParamSet {
  std::vector<LayerParams<T>> layers;

  std::size_t parameter_count() const;
  void fill(T value);

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

template <class To, class From>
ParamSet<To> convert_params(const ParamSet<From>& params);

/// Zero-valued parameters with the right shapes for spec.
template <class T>
ParamSet<T> zero_params(const NetworkSpec& spec);

/// He-scaled normal weights for layers feeding a relu, Xavier-scaled for the
/// others (the final classifier), zero biases.
template <class T>
ParamSet<T> init_params(const NetworkSpec& spec, std::uint64_t seed);

/// Per-layer parameter shapes: {weight elements, bias elements}.
std::vector<std::pair<std::size_t, std::size_t>> param_shapes(const NetworkSpec& spec);

template <class T>
struct NetworkInput {
  std::optional<NdTensor<T>> image;
  std::optional<NdTensor<T>> betti;
};

template <class T>
struct LossAndGrads {
  T loss = 0;
  ParamSet<T> grads;
};

/// Stateless evaluator for one NetworkSpec.
template <class T>
class Network {
 public:
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const noexcept { return spec_; }
  const std::vector<std::size_t>& output_shape(std::size_t position) const { return shapes_.at(position); }

  /// Class probabilities (length 2).
  std::vector<T> forward(const ParamSet<T>& params, const NetworkInput<T>& input) const;

  /// Pre-softmax scores (length 2).
  std::vector<T> logits(const ParamSet<T>& params, const NetworkInput<T>& input) const;

  /// Mean softmax cross-entropy over the batch and its parameter gradient.
  LossAndGrads<T> loss_and_grads(const ParamSet<T>& params, const std::vector<NetworkInput<T>>& batch,
                                 const std::vector<int>& labels) const;

  /// Mean loss without gradients.
  T loss(const ParamSet<T>& params, const std::vector<NetworkInput<T>>& batch, const std::vector<int>& labels) const;

  /// Relu sign pattern and pooling winners for one forward pass; equal
  /// signatures mean the network is locally the same smooth function.
  std::vector<std::uint32_t> kink_signature(const ParamSet<T>& params, const NetworkInput<T>& input) const;

  void validate_params(const ParamSet<T>& params) const;
  void validate_input(const NetworkInput<T>& input) const;

 private:
  struct Trace;

  void run(const ParamSet<T>& params, const NetworkInput<T>& input, Trace& trace) const;
  void backprop(const ParamSet<T>& params, const NetworkInput<T>& input, const Trace& trace, int label,
                ParamSet<T>& grads, Trace& scratch) const;

  NetworkSpec spec_;
  std::vector<std::vector<std::size_t>> shapes_;
  std::vector<std::size_t> stream_offsets_;  // deep, topo, fusion start positions
};

/// argmax of the probabilities; a tie goes to class 0.
template <class T>
int predict_label(const std::vector<T>& probabilities);

template <class T>
int predict(const Network<T>& network, const ParamSet<T>& params, const NetworkInput<T>& input) {
  return predict_label(network.forward(params, input));
}

/// Softmax of a score vector, max-shifted for stability.
template <class T>
std::vector<T> softmax(const std::vector<T>& logits);

}  // namespace topofuse::neural
