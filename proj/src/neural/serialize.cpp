#include "topofuse/neural/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "topofuse/errors.hpp"
#include "topofuse/format.hpp"

namespace topofuse::neural {

namespace {

const char* kind_token(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv2d: return "conv2d";
    case LayerKind::kMaxPool2: return "maxpool2";
    case LayerKind::kDense: return "dense";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kFlatten: return "flatten";
    case LayerKind::kConcatInput: return "concat_input";
    case LayerKind::kSoftmax: return "softmax";
  }
  return "?";
}

std::size_t parse_count(const std::string& token) {
  const double v = parse_real(token);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ArgumentError("expected a non-negative integer, got '" + token + "'");
  }
  return static_cast<std::size_t>(v);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw FormatError("incompatible model file: truncated");
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string text(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string describe_spec(const NetworkSpec& spec) {
  std::ostringstream out;
  out << "name " << spec.name << '\n';
  out << "image_side " << spec.image_side << '\n';
  out << "curve_len " << spec.curve_len << '\n';
  out << "betti_scale " << format_real(spec.betti_scale) << '\n';
  auto emit = [&](const char* stream, const std::vector<LayerSpec>& layers) {
    for (const LayerSpec& layer : layers) {
      out << stream << ' ' << kind_token(layer.kind);
      if (layer.kind == LayerKind::kConv2d) out << ' ' << layer.filters << ' ' << layer.kernel;
      if (layer.kind == LayerKind::kDense) out << ' ' << layer.units;
      if (layer.kind == LayerKind::kConcatInput) out << ' ' << (layer.input == InputName::kBetti ? "betti" : "image");
      out << '\n';
    }
  };
  emit("deep", spec.deep_stream);
  emit("topo", spec.topo_stream);
  emit("fusion", spec.fusion);
  return out.str();
}

NetworkSpec parse_spec(const std::string& descriptor) {
  NetworkSpec spec;
  std::istringstream in(descriptor);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::vector<std::string> t{std::istream_iterator<std::string>(tokens), std::istream_iterator<std::string>()};
    auto bad = [&](const std::string& why) {
      return ArgumentError("network descriptor line " + std::to_string(line_no) + ": " + why);
    };
    if (t.size() < 2) throw bad("expected at least two tokens");
    if (t[0] == "name") {
      spec.name = t[1];
    } else if (t[0] == "image_side") {
      spec.image_side = parse_count(t[1]);
    } else if (t[0] == "curve_len") {
      spec.curve_len = parse_count(t[1]);
    } else if (t[0] == "betti_scale") {
      spec.betti_scale = parse_real(t[1]);
    } else if (t[0] == "deep" || t[0] == "topo" || t[0] == "fusion") {
      auto& target = t[0] == "deep" ? spec.deep_stream : t[0] == "topo" ? spec.topo_stream : spec.fusion;
      const std::string& kind = t[1];
      if (kind == "conv2d" && t.size() == 4) {
        target.push_back(LayerSpec::conv2d(parse_count(t[2]), parse_count(t[3])));
      } else if (kind == "dense" && t.size() == 3) {
        target.push_back(LayerSpec::dense(parse_count(t[2])));
      } else if (kind == "concat_input" && t.size() == 3 && (t[2] == "betti" || t[2] == "image")) {
        target.push_back(LayerSpec::concat_input(t[2] == "betti" ? InputName::kBetti : InputName::kImage));
      } else if (kind == "maxpool2" && t.size() == 2) {
        target.push_back(LayerSpec::maxpool2());
      } else if (kind == "relu" && t.size() == 2) {
        target.push_back(LayerSpec::relu());
      } else if (kind == "flatten" && t.size() == 2) {
        target.push_back(LayerSpec::flatten());
      } else if (kind == "softmax" && t.size() == 2) {
        target.push_back(LayerSpec::softmax());
      } else {
        throw bad("malformed layer '" + line + "'");
      }
    } else {
      throw bad("unknown key '" + t[0] + "'");
    }
  }
  infer_shapes(spec);
  return spec;
}

std::vector<std::uint8_t> encode_model(const Model& model) {
  Network<float>(model.spec).validate_params(model.params);
  const std::string descriptor = describe_spec(model.spec);
  std::vector<std::uint8_t> out(std::begin(kModelMagic), std::end(kModelMagic));
  put_u16(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(descriptor.size()));
  out.insert(out.end(), descriptor.begin(), descriptor.end());
  for (const auto& layer : model.params.layers) {
    for (float w : layer.weight) put_f32(out, w);
    for (float b : layer.bias) put_f32(out, b);
  }
  return out;
}

Model decode_model(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  if (in.text(4) != std::string(kModelMagic, 4)) throw FormatError("incompatible model file: bad magic");
  const std::uint16_t version = in.u16();
  if (version != kModelVersion) {
    throw FormatError("incompatible model file: version " + std::to_string(version));
  }
  const std::uint32_t length = in.u32();
  Model model;
  try {
    model.spec = parse_spec(in.text(length));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("incompatible model file: ") + e.what());
  }
  model.params = zero_params<float>(model.spec);
  for (auto& layer : model.params.layers) {
    for (float& w : layer.weight) w = in.f32();
    for (float& b : layer.bias) b = in.f32();
  }
  if (!in.done()) throw FormatError("incompatible model file: trailing bytes");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  const std::vector<std::uint8_t> bytes = encode_model(model);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string(), "cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(tmp.string(), "write failed");
  }
  std::filesystem::rename(tmp, path);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open model file");
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return decode_model(bytes);
}

}  // namespace topofuse::neural
