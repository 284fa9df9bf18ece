#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topofuse/pipeline/dataset.hpp"

namespace topofuse::pipeline {

struct BlobOptions {
  std::size_t side = 64;
  double background = 0.85;
  /// Standard deviation of the additive Gaussian pixel noise.
  double noise = 0.03;
  double min_depth = 0.55;
  double max_depth = 0.75;
};

/// Gaussian width of a blob; blobs are treated as discs of radius 2.5 sigma.
double blob_sigma(const BlobOptions& options);
double blob_radius(const BlobOptions& options);

/// Dark Gaussian blobs on a bright noisy background: negatives carry 1-3
/// blobs, positives 6-8, with centres at least two radii apart. Ids are
/// "negative/blob_NNNN" and "positive/blob_NNNN"; negatives come first.
std::vector<Sample> generate_blob_dataset(std::size_t count_per_class, std::uint64_t seed,
                                          const BlobOptions& options = {});

/// A single image with exactly blob_count blobs; exposed for tests.
ImageTensor render_blob_image(std::size_t blob_count, std::uint64_t seed, const BlobOptions& options);

}  // namespace topofuse::pipeline
