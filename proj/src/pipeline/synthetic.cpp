#include "topofuse/pipeline/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "topofuse/errors.hpp"
#include "topofuse/random.hpp"

namespace topofuse::pipeline {

double blob_sigma(const BlobOptions& options) { return static_cast<double>(options.side) / 32.0; }

double blob_radius(const BlobOptions& options) { return 2.5 * blob_sigma(options); }

namespace {

struct Blob {
  double row, col, depth;
};

constexpr int kPlacementAttempts = 10000;

std::vector<Blob> place_blobs(std::size_t count, const BlobOptions& options, Rng& rng) {
  const double radius = blob_radius(options);
  const double lo = radius;
  const double hi = static_cast<double>(options.side) - 1.0 - radius;
  const double min_gap = 2.0 * radius;
  for (;;) {
    std::vector<Blob> blobs;
    for (int attempt = 0; attempt < kPlacementAttempts && blobs.size() < count; ++attempt) {
      const Blob b{rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(options.min_depth, options.max_depth)};
      const bool clear = std::all_of(blobs.begin(), blobs.end(), [&](const Blob& o) {
        return std::hypot(o.row - b.row, o.col - b.col) >= min_gap;
      });
      if (clear) blobs.push_back(b);
    }
    if (blobs.size() == count) return blobs;
  }
}

}  // namespace

ImageTensor render_blob_image(std::size_t blob_count, std::uint64_t seed, const BlobOptions& options) {
  if (options.side < 16) throw ArgumentError("blob images need a side of at least 16");
  if (options.noise < 0.0) throw ArgumentError("noise must be non-negative");
  const double radius = blob_radius(options);
  const double side = static_cast<double>(options.side);
  // Rough packing bound; denser requests could never be placed.
  if (static_cast<double>(blob_count) * radius * radius * 4.0 > (side - 2.0 * radius) * (side - 2.0 * radius)) {
    throw ArgumentError("too many blobs for the image side");
  }

  Rng rng(seed);
  const std::vector<Blob> blobs = place_blobs(blob_count, options, rng);
  const double two_var = 2.0 * blob_sigma(options) * blob_sigma(options);

  std::vector<double> values(options.side * options.side);
  for (std::size_t r = 0; r < options.side; ++r) {
    for (std::size_t c = 0; c < options.side; ++c) {
      double dip = 0.0;
      for (const Blob& b : blobs) {
        const double dr = static_cast<double>(r) - b.row;
        const double dc = static_cast<double>(c) - b.col;
        dip = std::max(dip, b.depth * std::exp(-(dr * dr + dc * dc) / two_var));
      }
      double v = options.background - dip;
      if (options.noise > 0.0) v += options.noise * rng.normal();
      values[r * options.side + c] = std::clamp(v, 0.0, 1.0);
    }
  }
  return ImageTensor(options.side, options.side, std::move(values));
}

std::vector<Sample> generate_blob_dataset(std::size_t count_per_class, std::uint64_t seed,
                                          const BlobOptions& options) {
  if (count_per_class == 0) throw ArgumentError("count per class must be positive");
  std::vector<Sample> samples;
  samples.reserve(2 * count_per_class);
  for (int label : {kNegative, kPositive}) {
    const std::size_t base_count = label == kPositive ? 6 : 1;
    for (std::size_t i = 0; i < count_per_class; ++i) {
      const std::uint64_t stream = static_cast<std::uint64_t>(label) * count_per_class + i;
      const std::uint64_t sample_seed = derive_seed(seed, stream);
      Rng pick(sample_seed);
      const std::size_t blobs = base_count + pick.below(3);
      char id[64];
      std::snprintf(id, sizeof id, "%s/blob_%04zu", label == kPositive ? "positive" : "negative", i);
      samples.push_back({id, render_blob_image(blobs, pick.next(), options), std::nullopt, label});
    }
  }
  return samples;
}

}  // namespace topofuse::pipeline
