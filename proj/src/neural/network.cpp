#include "topofuse/neural/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "topofuse/errors.hpp"
#include "topofuse/neural/kernels.hpp"
#include "topofuse/random.hpp"

namespace topofuse::neural {

std::string variant_name(Variant variant) {
  switch (variant) {
    case Variant::kBase: return "base";
    case Variant::kTda1: return "tda1";
    case Variant::kTda12: return "tda12";
    case Variant::kTda123: return "tda123";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::kBase, Variant::kTda1, Variant::kTda12, Variant::kTda123}) {
    if (variant_name(v) == name) return v;
  }
  throw ArgumentError("unknown variant '" + name + "' (expected base, tda1, tda12 or tda123)");
}

bool variant_uses_image(Variant variant) { return variant != Variant::kTda1; }
bool variant_uses_betti(Variant variant) { return variant != Variant::kBase; }

const LayerSpec& NetworkSpec::layer(std::size_t position) const {
  if (position < deep_stream.size()) return deep_stream[position];
  position -= deep_stream.size();
  if (position < topo_stream.size()) return topo_stream[position];
  position -= topo_stream.size();
  if (position < fusion.size()) return fusion[position];
  throw IndexError("layer position out of range");
}

namespace {

std::vector<LayerSpec> conv_stack() {
  std::vector<LayerSpec> layers;
  for (std::size_t filters : {16, 32, 64, 64}) {
    layers.push_back(LayerSpec::conv2d(filters, 3));
    layers.push_back(LayerSpec::relu());
    layers.push_back(LayerSpec::maxpool2());
  }
  layers.push_back(LayerSpec::flatten());
  layers.push_back(LayerSpec::dense(64));
  layers.push_back(LayerSpec::relu());
  return layers;
}

std::vector<LayerSpec> topo_head() {
  return {LayerSpec::dense(64), LayerSpec::relu(), LayerSpec::dense(32), LayerSpec::relu()};
}

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

NetworkSpec build_network(Variant variant, std::size_t image_side, std::size_t curve_len) {
  NetworkSpec spec;
  spec.name = variant_name(variant);
  if (variant_uses_image(variant)) {
    if (image_side < 16 || image_side % 16 != 0) {
      throw ArgumentError("image_side must be a positive multiple of 16, got " + std::to_string(image_side));
    }
    spec.image_side = image_side;
    spec.deep_stream = conv_stack();
  }
  if (variant_uses_betti(variant)) {
    if (curve_len == 0) throw ArgumentError("curve_len must be positive");
    spec.curve_len = curve_len;
    spec.topo_stream = topo_head();
  }
  switch (variant) {
    case Variant::kBase:
    case Variant::kTda1:
      spec.fusion = {LayerSpec::dense(2), LayerSpec::softmax()};
      break;
    case Variant::kTda12:
      spec.fusion = {LayerSpec::dense(32), LayerSpec::relu(), LayerSpec::dense(2), LayerSpec::softmax()};
      break;
    case Variant::kTda123:
      spec.fusion = {LayerSpec::concat_input(InputName::kBetti), LayerSpec::dense(32), LayerSpec::relu(),
                     LayerSpec::dense(2), LayerSpec::softmax()};
      break;
  }
  return spec;
}

namespace {

struct ShapePlan {
  std::vector<std::vector<std::size_t>> in;
  std::vector<std::vector<std::size_t>> out;
};

ShapePlan plan_shapes(const NetworkSpec& spec) {
  if (!spec.uses_image() && !spec.uses_betti()) {
    throw ArgumentError("network declares neither an image nor a betti input");
  }
  ShapePlan plan;
  std::size_t position = 0;

  auto step = [&](const LayerSpec& layer, std::vector<std::size_t> shape, bool is_last) {
    plan.in.push_back(shape);
    auto fail = [&](const std::string& what) { throw ShapeError(position, what); };
    switch (layer.kind) {
      case LayerKind::kConv2d:
        if (shape.size() != 3) fail("conv2d expects a CxHxW activation");
        if (layer.filters == 0 || layer.kernel == 0 || layer.kernel % 2 == 0) fail("conv2d needs filters and an odd kernel");
        shape[0] = layer.filters;
        break;
      case LayerKind::kMaxPool2:
        if (shape.size() != 3) fail("maxpool2 expects a CxHxW activation");
        if (shape[1] < 2 || shape[2] < 2) fail("maxpool2 input smaller than 2x2");
        shape = {shape[0], shape[1] / 2, shape[2] / 2};
        break;
      case LayerKind::kDense:
        if (shape.size() != 1) fail("dense expects a flat activation");
        if (layer.units == 0) fail("dense needs at least one unit");
        shape = {layer.units};
        break;
      case LayerKind::kRelu:
        break;
      case LayerKind::kFlatten:
        shape = {product(shape)};
        break;
      case LayerKind::kConcatInput: {
        if (shape.size() != 1) fail("concat_input expects a flat activation");
        const std::size_t extra = layer.input == InputName::kBetti ? spec.curve_len : spec.image_side * spec.image_side;
        if (extra == 0) fail("concat_input references an undeclared input");
        shape = {shape[0] + extra};
        break;
      }
      case LayerKind::kSoftmax:
        if (shape.size() != 1) fail("softmax expects a flat activation");
        if (!is_last) fail("softmax must be the final layer");
        break;
    }
    plan.out.push_back(shape);
    ++position;
    return shape;
  };

  auto run_stream = [&](const std::vector<LayerSpec>& layers, std::vector<std::size_t> shape) {
    for (const LayerSpec& layer : layers) shape = step(layer, shape, false);
    return shape;
  };

  std::size_t fused = 0;
  const std::size_t fusion_start = spec.deep_stream.size() + spec.topo_stream.size();
  if (spec.uses_image()) {
    const auto out = run_stream(spec.deep_stream, {1, spec.image_side, spec.image_side});
    if (out.size() != 1) throw ShapeError(fusion_start, "deep stream must end in a flat activation");
    fused += out[0];
  } else if (!spec.deep_stream.empty()) {
    throw ShapeError(0, "deep stream declared without an image input");
  }
  if (spec.uses_betti()) {
    const auto out = run_stream(spec.topo_stream, {spec.curve_len});
    fused += out[0];
  } else if (!spec.topo_stream.empty()) {
    throw ShapeError(spec.deep_stream.size(), "topological stream declared without a betti input");
  }

  if (spec.fusion.empty() || spec.fusion.back().kind != LayerKind::kSoftmax) {
    throw ShapeError(fusion_start + spec.fusion.size(), "network must end in softmax");
  }
  std::vector<std::size_t> shape{fused};
  for (std::size_t i = 0; i < spec.fusion.size(); ++i) {
    shape = step(spec.fusion[i], shape, i + 1 == spec.fusion.size());
  }
  if (shape != std::vector<std::size_t>{2}) {
    throw ShapeError(fusion_start + spec.fusion.size() - 1, "softmax must be over exactly 2 classes");
  }
  return plan;
}

}  // namespace

std::vector<std::vector<std::size_t>> infer_shapes(const NetworkSpec& spec) { return plan_shapes(spec).out; }

std::size_t fusion_input_width(const NetworkSpec& spec) {
  const ShapePlan plan = plan_shapes(spec);
  const std::size_t start = spec.deep_stream.size() + spec.topo_stream.size();
  // Width of what the first fusion layer actually consumes, after any
  // leading concat_input layers.
  std::size_t pos = start;
  while (pos < plan.out.size() && spec.layer(pos).kind == LayerKind::kConcatInput) ++pos;
  return pos == start ? plan.in[start][0] : plan.out[pos - 1][0];
}

std::vector<std::pair<std::size_t, std::size_t>> param_shapes(const NetworkSpec& spec) {
  const ShapePlan plan = plan_shapes(spec);
  std::vector<std::pair<std::size_t, std::size_t>> shapes(spec.layer_count(), {0, 0});
  for (std::size_t p = 0; p < spec.layer_count(); ++p) {
    const LayerSpec& layer = spec.layer(p);
    if (layer.kind == LayerKind::kConv2d) {
      shapes[p] = {layer.filters * plan.in[p][0] * layer.kernel * layer.kernel, layer.filters};
    } else if (layer.kind == LayerKind::kDense) {
      shapes[p] = {layer.units * plan.in[p][0], layer.units};
    }
  }
  return shapes;
}

template <class T>
std::size_t ParamSet<T>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

template <class T>
void ParamSet<T>::fill(T value) {
  for (auto& layer : layers) {
    std::fill(layer.weight.begin(), layer.weight.end(), value);
    std::fill(layer.bias.begin(), layer.bias.end(), value);
  }
}

template <class To, class From>
ParamSet<To> convert_params(const ParamSet<From>& params) {
  ParamSet<To> out;
  out.layers.resize(params.layers.size());
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    out.layers[i].weight.assign(params.layers[i].weight.begin(), params.layers[i].weight.end());
    out.layers[i].bias.assign(params.layers[i].bias.begin(), params.layers[i].bias.end());
  }
  return out;
}

template <class T>
ParamSet<T> zero_params(const NetworkSpec& spec) {
  ParamSet<T> params;
  for (const auto& [weights, biases] : param_shapes(spec)) {
    params.layers.push_back({std::vector<T>(weights, T{0}), std::vector<T>(biases, T{0})});
  }
  return params;
}

template <class T>
ParamSet<T> init_params(const NetworkSpec& spec, std::uint64_t seed) {
  const ShapePlan plan = plan_shapes(spec);
  ParamSet<T> params = zero_params<T>(spec);
  Rng rng(seed);
  for (std::size_t p = 0; p < spec.layer_count(); ++p) {
    const LayerSpec& layer = spec.layer(p);
    if (!layer.has_params()) continue;
    std::size_t fan_in = plan.in[p][0];
    std::size_t fan_out = layer.units;
    if (layer.kind == LayerKind::kConv2d) {
      fan_in *= layer.kernel * layer.kernel;
      fan_out = layer.filters * layer.kernel * layer.kernel;
    }
    const bool feeds_relu = p + 1 < spec.layer_count() && spec.layer(p + 1).kind == LayerKind::kRelu;
    const double stddev = feeds_relu ? std::sqrt(2.0 / static_cast<double>(fan_in))
                                     : std::sqrt(2.0 / static_cast<double>(fan_in + fan_out));
    for (T& w : params.layers[p].weight) w = static_cast<T>(stddev * rng.normal());
  }
  return params;
}

template <class T>
struct Network<T>::Trace {
  std::vector<T> image;
  std::vector<T> betti;
  std::vector<T> fusion_in;
  std::vector<std::vector<T>> out;
  std::vector<std::vector<std::uint32_t>> argmax;
  std::vector<T> grad;
  std::vector<T> grad_next;
  std::vector<T> cols;
  std::vector<T> grad_cols;
};

template <class T>
Network<T>::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  shapes_ = plan_shapes(spec_).out;
  stream_offsets_ = {0, spec_.deep_stream.size(), spec_.deep_stream.size() + spec_.topo_stream.size()};
}

template <class T>
void Network<T>::validate_params(const ParamSet<T>& params) const {
  const auto shapes = param_shapes(spec_);
  if (params.layers.size() != shapes.size()) {
    throw ShapeError(std::min(params.layers.size(), shapes.size()), "parameter set has wrong number of layers");
  }
  for (std::size_t p = 0; p < shapes.size(); ++p) {
    if (params.layers[p].weight.size() != shapes[p].first || params.layers[p].bias.size() != shapes[p].second) {
      throw ShapeError(p, "parameter arrays do not match layer shape");
    }
  }
}

template <class T>
void Network<T>::validate_input(const NetworkInput<T>& input) const {
  if (spec_.uses_image()) {
    const std::size_t side = spec_.image_side;
    if (!input.image || input.image->size() != side * side) {
      throw ShapeError(stream_offsets_[0] == stream_offsets_[1] ? stream_offsets_[2] : stream_offsets_[0],
                       "expected a " + std::to_string(side) + "x" + std::to_string(side) + " image input");
    }
  }
  if (spec_.uses_betti()) {
    if (!input.betti || input.betti->size() != spec_.curve_len) {
      throw ShapeError(stream_offsets_[1] == stream_offsets_[2] ? stream_offsets_[2] : stream_offsets_[1],
                       "expected a betti input of length " + std::to_string(spec_.curve_len));
    }
  }
}

template <class T>
void Network<T>::run(const ParamSet<T>& params, const NetworkInput<T>& input, Trace& trace) const {
  const std::size_t count = spec_.layer_count();
  trace.out.resize(count);
  trace.argmax.resize(count);
  if (spec_.uses_image()) trace.image.assign(input.image->values.begin(), input.image->values.end());
  if (spec_.uses_betti()) {
    trace.betti.resize(spec_.curve_len);
    const T scale = static_cast<T>(spec_.betti_scale);
    for (std::size_t i = 0; i < spec_.curve_len; ++i) trace.betti[i] = input.betti->values[i] * scale;
  }

  auto apply = [&](std::size_t p, const std::vector<T>& in, const std::vector<std::size_t>& in_shape) {
    const LayerSpec& layer = spec_.layer(p);
    std::vector<T>& out = trace.out[p];
    const auto& out_shape = shapes_[p];
    std::size_t out_size = 1;
    for (std::size_t d : out_shape) out_size *= d;
    out.resize(out_size);
    switch (layer.kind) {
      case LayerKind::kConv2d:
        kernels::conv2d_forward(in.data(), in_shape[0], in_shape[1], in_shape[2], params.layers[p].weight.data(),
                                params.layers[p].bias.data(), layer.filters, layer.kernel, out.data(), trace.cols);
        break;
      case LayerKind::kMaxPool2:
        trace.argmax[p].resize(out_size);
        kernels::maxpool2_forward(in.data(), in_shape[0], in_shape[1], in_shape[2], out.data(), trace.argmax[p].data());
        break;
      case LayerKind::kDense:
        kernels::dense_forward(in.data(), in.size(), params.layers[p].weight.data(), params.layers[p].bias.data(),
                               layer.units, out.data());
        break;
      case LayerKind::kRelu:
        for (std::size_t i = 0; i < out_size; ++i) out[i] = in[i] < T{0} ? T{0} : in[i];  // NaN propagates
        break;
      case LayerKind::kFlatten:
        std::copy(in.begin(), in.end(), out.begin());
        break;
      case LayerKind::kConcatInput: {
        const std::vector<T>& extra = layer.input == InputName::kBetti ? trace.betti : trace.image;
        std::copy(in.begin(), in.end(), out.begin());
        std::copy(extra.begin(), extra.end(), out.begin() + static_cast<std::ptrdiff_t>(in.size()));
        break;
      }
      case LayerKind::kSoftmax:
        out = softmax(in);
        break;
    }
  };

  auto run_stream = [&](std::size_t begin, std::size_t end, const std::vector<T>& in,
                        std::vector<std::size_t> in_shape) -> const std::vector<T>& {
    const std::vector<T>* cur = &in;
    for (std::size_t p = begin; p < end; ++p) {
      apply(p, *cur, in_shape);
      cur = &trace.out[p];
      in_shape = shapes_[p];
    }
    return *cur;
  };

  trace.fusion_in.clear();
  if (spec_.uses_image()) {
    const auto& deep = run_stream(stream_offsets_[0], stream_offsets_[1], trace.image,
                                  {1, spec_.image_side, spec_.image_side});
    trace.fusion_in.insert(trace.fusion_in.end(), deep.begin(), deep.end());
  }
  if (spec_.uses_betti()) {
    const auto& topo = run_stream(stream_offsets_[1], stream_offsets_[2], trace.betti, {spec_.curve_len});
    trace.fusion_in.insert(trace.fusion_in.end(), topo.begin(), topo.end());
  }
  run_stream(stream_offsets_[2], count, trace.fusion_in, {trace.fusion_in.size()});
}

template <class T>
void Network<T>::backprop(const ParamSet<T>& params, const NetworkInput<T>&, const Trace& trace, int label,
                          ParamSet<T>& grads, Trace& scratch) const {
  const std::size_t count = spec_.layer_count();
  std::vector<T>& g = scratch.grad;
  std::vector<T>& g_next = scratch.grad_next;

  // Gradient of cross-entropy w.r.t. the softmax input: p - onehot.
  g = trace.out[count - 1];
  g[static_cast<std::size_t>(label)] -= T{1};

  auto layer_input = [&](std::size_t p, std::size_t begin, const std::vector<T>& stream_in) -> const std::vector<T>& {
    return p == begin ? stream_in : trace.out[p - 1];
  };
  auto input_shape = [&](std::size_t p, std::size_t begin, const std::vector<std::size_t>& stream_shape) {
    return p == begin ? stream_shape : shapes_[p - 1];
  };

  // Walks [begin, end) backwards, starting with g holding d(loss)/d(out[end-1]).
  auto back_stream = [&](std::size_t begin, std::size_t end, const std::vector<T>& stream_in,
                         const std::vector<std::size_t>& stream_shape, bool need_input_grad) {
    for (std::size_t p = end; p-- > begin;) {
      const LayerSpec& layer = spec_.layer(p);
      const std::vector<T>& in = layer_input(p, begin, stream_in);
      const auto in_shape = input_shape(p, begin, stream_shape);
      const bool want_in = need_input_grad || p > begin;
      g_next.assign(in.size(), T{0});
      switch (layer.kind) {
        case LayerKind::kConv2d:
          kernels::conv2d_backward(in.data(), in_shape[0], in_shape[1], in_shape[2], params.layers[p].weight.data(),
                                   layer.filters, layer.kernel, g.data(), want_in ? g_next.data() : nullptr,
                                   grads.layers[p].weight.data(), grads.layers[p].bias.data(), scratch.cols,
                                   scratch.grad_cols);
          break;
        case LayerKind::kMaxPool2:
          kernels::maxpool2_backward(g.data(), trace.argmax[p].data(), g.size(), g_next.data());
          break;
        case LayerKind::kDense:
          kernels::dense_backward(in.data(), in.size(), params.layers[p].weight.data(), layer.units, g.data(),
                                  want_in ? g_next.data() : nullptr, grads.layers[p].weight.data(),
                                  grads.layers[p].bias.data());
          break;
        case LayerKind::kRelu: {
          const std::vector<T>& out = trace.out[p];
          for (std::size_t i = 0; i < g.size(); ++i) g_next[i] = out[i] > T{0} ? g[i] : T{0};
          break;
        }
        case LayerKind::kFlatten:
          std::copy(g.begin(), g.end(), g_next.begin());
          break;
        case LayerKind::kConcatInput:
          std::copy(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(in.size()), g_next.begin());
          break;
        case LayerKind::kSoftmax:
          // Already folded into the initial p - onehot gradient.
          std::copy(g.begin(), g.end(), g_next.begin());
          break;
      }
      std::swap(g, g_next);
    }
  };

  back_stream(stream_offsets_[2], count, trace.fusion_in, {trace.fusion_in.size()}, true);

  // g now holds d(loss)/d(fusion_in) = [deep | topo].
  const std::vector<T> fused_grad = g;
  std::size_t offset = 0;
  if (spec_.uses_image()) {
    const std::size_t width = stream_offsets_[0] == stream_offsets_[1] ? trace.image.size()
                                                                       : trace.out[stream_offsets_[1] - 1].size();
    g.assign(fused_grad.begin(), fused_grad.begin() + static_cast<std::ptrdiff_t>(width));
    back_stream(stream_offsets_[0], stream_offsets_[1], trace.image, {1, spec_.image_side, spec_.image_side}, false);
    offset = width;
  }
  if (spec_.uses_betti()) {
    g.assign(fused_grad.begin() + static_cast<std::ptrdiff_t>(offset), fused_grad.end());
    back_stream(stream_offsets_[1], stream_offsets_[2], trace.betti, {spec_.curve_len}, false);
  }
}

template <class T>
std::vector<T> softmax(const std::vector<T>& logits) {
  const T peak = *std::max_element(logits.begin(), logits.end());
  std::vector<T> out(logits.size());
  T sum = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    sum += out[i];
  }
  for (T& v : out) v /= sum;
  return out;
}

template <class T>
std::vector<T> Network<T>::forward(const ParamSet<T>& params, const NetworkInput<T>& input) const {
  validate_params(params);
  validate_input(input);
  Trace trace;
  run(params, input, trace);
  return trace.out.back();
}

template <class T>
std::vector<T> Network<T>::logits(const ParamSet<T>& params, const NetworkInput<T>& input) const {
  validate_params(params);
  validate_input(input);
  Trace trace;
  run(params, input, trace);
  const std::size_t count = spec_.layer_count();
  return count - 1 > stream_offsets_[2] ? trace.out[count - 2] : trace.fusion_in;
}

namespace {

template <class T>
T cross_entropy_from_logits(const std::vector<T>& z, int label) {
  const T peak = *std::max_element(z.begin(), z.end());
  T sum = 0;
  for (T v : z) sum += std::exp(v - peak);
  return peak + std::log(sum) - z[static_cast<std::size_t>(label)];
}

void check_labels(std::size_t batch, const std::vector<int>& labels) {
  if (batch == 0) throw ArgumentError("batch is empty");
  if (labels.size() != batch) throw ArgumentError("label count does not match batch size");
  for (int label : labels) {
    if (label != 0 && label != 1) throw ArgumentError("label " + std::to_string(label) + " is not 0 or 1");
  }
}

}  // namespace

template <class T>
LossAndGrads<T> Network<T>::loss_and_grads(const ParamSet<T>& params, const std::vector<NetworkInput<T>>& batch,
                                           const std::vector<int>& labels) const {
  check_labels(batch.size(), labels);
  validate_params(params);
  LossAndGrads<T> result;
  result.grads = zero_params<T>(spec_);
  Trace trace;
  Trace scratch;
  const std::size_t count = spec_.layer_count();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    validate_input(batch[i]);
    run(params, batch[i], trace);
    const std::vector<T>& z = count - 1 > stream_offsets_[2] ? trace.out[count - 2] : trace.fusion_in;
    result.loss += cross_entropy_from_logits(z, labels[i]);
    backprop(params, batch[i], trace, labels[i], result.grads, scratch);
  }
  const T inv = T{1} / static_cast<T>(batch.size());
  result.loss *= inv;
  for (auto& layer : result.grads.layers) {
    for (T& v : layer.weight) v *= inv;
    for (T& v : layer.bias) v *= inv;
  }
  return result;
}

template <class T>
T Network<T>::loss(const ParamSet<T>& params, const std::vector<NetworkInput<T>>& batch,
                   const std::vector<int>& labels) const {
  check_labels(batch.size(), labels);
  validate_params(params);
  Trace trace;
  T total = 0;
  const std::size_t count = spec_.layer_count();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    validate_input(batch[i]);
    run(params, batch[i], trace);
    const std::vector<T>& z = count - 1 > stream_offsets_[2] ? trace.out[count - 2] : trace.fusion_in;
    total += cross_entropy_from_logits(z, labels[i]);
  }
  return total / static_cast<T>(batch.size());
}

template <class T>
std::vector<std::uint32_t> Network<T>::kink_signature(const ParamSet<T>& params, const NetworkInput<T>& input) const {
  validate_params(params);
  validate_input(input);
  Trace trace;
  run(params, input, trace);
  std::vector<std::uint32_t> signature;
  for (std::size_t p = 0; p < spec_.layer_count(); ++p) {
    const LayerKind kind = spec_.layer(p).kind;
    if (kind == LayerKind::kRelu) {
      for (T v : trace.out[p]) signature.push_back(v > T{0} ? 1u : 0u);
    } else if (kind == LayerKind::kMaxPool2) {
      signature.insert(signature.end(), trace.argmax[p].begin(), trace.argmax[p].end());
    }
  }
  return signature;
}

template <class T>
int predict_label(const std::vector<T>& probabilities) {
  if (probabilities.size() != 2) throw ArgumentError("expected two class probabilities");
  return probabilities[1] > probabilities[0] ? 1 : 0;
}

template struct ParamSet<float>;
template struct ParamSet<double>;
template class Network<float>;
template class Network<double>;
template ParamSet<float> convert_params<float, double>(const ParamSet<double>&);
template ParamSet<double> convert_params<double, float>(const ParamSet<float>&);
template ParamSet<float> convert_params<float, float>(const ParamSet<float>&);
template ParamSet<double> convert_params<double, double>(const ParamSet<double>&);
template ParamSet<float> zero_params<float>(const NetworkSpec&);
template ParamSet<double> zero_params<double>(const NetworkSpec&);
template ParamSet<float> init_params<float>(const NetworkSpec&, std::uint64_t);
template ParamSet<double> init_params<double>(const NetworkSpec&, std::uint64_t);
template int predict_label<float>(const std::vector<float>&);
template int predict_label<double>(const std::vector<double>&);
template std::vector<float> softmax<float>(const std::vector<float>&);
template std::vector<double> softmax<double>(const std::vector<double>&);

}  // namespace topofuse::neural
