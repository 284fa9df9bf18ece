#include "topofuse/pipeline/dataset.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "topofuse/errors.hpp"
#include "topofuse/random.hpp"

namespace topofuse::pipeline {

namespace fs = std::filesystem;

ImageTensor resize_bilinear(const ImageTensor& image, std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw ArgumentError("resize target must be non-empty");
  const std::size_t sh = image.height();
  const std::size_t sw = image.width();
  if (sh == height && sw == width) return image;

  // Source coordinate of each target pixel centre, clamped to the grid.
  struct Tap {
    std::size_t lo, hi;
    double w;
  };
  auto taps = [](std::size_t src, std::size_t dst) {
    std::vector<Tap> out(dst);
    const double ratio = static_cast<double>(src) / static_cast<double>(dst);
    for (std::size_t j = 0; j < dst; ++j) {
      double x = (static_cast<double>(j) + 0.5) * ratio - 0.5;
      x = std::clamp(x, 0.0, static_cast<double>(src - 1));
      const auto lo = static_cast<std::size_t>(std::floor(x));
      const std::size_t hi = std::min(lo + 1, src - 1);
      out[j] = {lo, hi, x - static_cast<double>(lo)};
    }
    return out;
  };
  const std::vector<Tap> ry = taps(sh, height);
  const std::vector<Tap> rx = taps(sw, width);

  std::vector<double> values(height * width);
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const Tap& y = ry[i];
      const Tap& x = rx[j];
      const double top = image.at(y.lo, x.lo) * (1.0 - x.w) + image.at(y.lo, x.hi) * x.w;
      const double bottom = image.at(y.hi, x.lo) * (1.0 - x.w) + image.at(y.hi, x.hi) * x.w;
      values[i * width + j] = top * (1.0 - y.w) + bottom * y.w;
    }
  }
  return ImageTensor(height, width, std::move(values));
}

ImageTensor load_image(const fs::path& path, std::size_t side) {
  if (side == 0) throw ArgumentError("image side must be positive");
  if (!fs::is_regular_file(path)) throw IoError(path.string(), "no such file");
  cv::Mat raw = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
  if (raw.empty()) throw IoError(path.string(), "cannot decode image");

  std::vector<double> values(static_cast<std::size_t>(raw.rows) * static_cast<std::size_t>(raw.cols));
  for (int r = 0; r < raw.rows; ++r) {
    const auto* row = raw.ptr<std::uint8_t>(r);
    for (int c = 0; c < raw.cols; ++c) {
      values[static_cast<std::size_t>(r) * raw.cols + c] = row[c] / 255.0;
    }
  }
  ImageTensor decoded(static_cast<std::size_t>(raw.rows), static_cast<std::size_t>(raw.cols), std::move(values));
  return resize_bilinear(decoded, side, side);
}

ImageTensor minmax_normalize(const ImageTensor& image) {
  const double lo = image.min_value();
  const double span = image.max_value() - lo;
  std::vector<double> values(image.values().begin(), image.values().end());
  for (double& v : values) v = span > 0.0 ? (v - lo) / span : 0.0;
  return ImageTensor(image.height(), image.width(), std::move(values));
}

void save_png(const fs::path& path, const ImageTensor& image) {
  cv::Mat out(static_cast<int>(image.height()), static_cast<int>(image.width()), CV_8UC1);
  for (std::size_t r = 0; r < image.height(); ++r) {
    auto* row = out.ptr<std::uint8_t>(static_cast<int>(r));
    for (std::size_t c = 0; c < image.width(); ++c) {
      row[c] = static_cast<std::uint8_t>(std::lround(std::clamp(image.at(r, c), 0.0, 1.0) * 255.0));
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), out);
  } catch (const cv::Exception& e) {
    throw IoError(path.string(), e.what());
  }
  if (!ok) throw IoError(path.string(), "cannot write image");
}

namespace {

void load_class(const fs::path& dir, int label, const char* name, std::size_t side, std::vector<Sample>& out) {
  if (!fs::is_directory(dir)) throw IoError(dir.string(), "missing class directory");
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (file.empty() || file.front() == '.' || !entry.is_regular_file()) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    out.push_back({std::string(name) + "/" + file.stem().string(), load_image(file, side), std::nullopt, label});
  }
}

}  // namespace

std::vector<Sample> load_image_folder(const fs::path& root, std::size_t side) {
  if (!fs::is_directory(root)) throw IoError(root.string(), "not a directory");
  std::vector<Sample> samples;
  load_class(root / "negative", kNegative, "negative", side, samples);
  load_class(root / "positive", kPositive, "positive", side, samples);
  if (samples.empty()) throw IoError(root.string(), "no images found");
  return samples;
}

SplitIndices split_indices(const std::vector<int>& labels, double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ArgumentError("holdout fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> members[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kNegative && labels[i] != kPositive) throw ArgumentError("labels must be 0 or 1");
    members[labels[i]].push_back(i);
  }
  if (members[0].empty() || members[1].empty()) throw ArgumentError("both classes must be present to split");

  Rng rng(seed);
  std::vector<bool> held(labels.size(), false);
  for (auto& group : members) {
    // Rounded up, with slack for products like 0.7 * 10 landing a hair above
    // an integer.
    const auto take =
        static_cast<std::size_t>(std::ceil(holdout_fraction * static_cast<double>(group.size()) - 1e-9));
    if (take == 0 || take >= group.size()) throw ArgumentError("holdout fraction leaves an empty split");
    rng.shuffle(std::span<std::size_t>(group));
    for (std::size_t k = 0; k < take; ++k) held[group[k]] = true;
  }

  SplitIndices split;
  for (std::size_t i = 0; i < labels.size(); ++i) (held[i] ? split.holdout : split.train).push_back(i);
  return split;
}

std::pair<std::vector<Sample>, std::vector<Sample>> split_dataset(const std::vector<Sample>& samples,
                                                                  double holdout_fraction, std::uint64_t seed) {
  std::vector<int> labels;
  labels.reserve(samples.size());
  for (const Sample& s : samples) labels.push_back(s.label);
  const SplitIndices split = split_indices(labels, holdout_fraction, seed);
  std::pair<std::vector<Sample>, std::vector<Sample>> out;
  for (std::size_t i : split.train) out.first.push_back(samples[i]);
  for (std::size_t i : split.holdout) out.second.push_back(samples[i]);
  return out;
}

std::vector<ImageTensor> images_of(const std::vector<Sample>& samples) {
  std::vector<ImageTensor> images;
  images.reserve(samples.size());
  for (const Sample& s : samples) {
    if (!s.image) throw ArgumentError("sample " + s.id + " has no image");
    images.push_back(*s.image);
  }
  return images;
}

void extract_curves(std::vector<Sample>& samples, const CurveConfig& config) {
  const std::vector<ImageTensor> images = images_of(samples);
  const CurveConfig resolved = resolve_range(images, config);
  const FeatureMatrix features = vectorize_dataset(images, resolved);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::span<const double> row = features.row(i);
    BettiCurve curve;
    curve.samples.assign(row.begin(), row.end());
    if (resolved.range == RangeMode::kFixed) {
      curve.t_min = resolved.t_min;
      curve.t_max = resolved.t_max;
    } else {
      curve.t_min = images[i].min_value();
      curve.t_max = images[i].max_value();
    }
    samples[i].betti = std::move(curve);
  }
}

}  // namespace topofuse::pipeline
