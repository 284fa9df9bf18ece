#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topofuse/image.hpp"
#include "topofuse/vectorize.hpp"

namespace topofuse::pipeline {

inline constexpr int kNegative = 0;
inline constexpr int kPositive = 1;

/// One labelled example. Either part may be missing depending on where the
/// sample came from (an image folder, a feature cache, or both).
struct Sample {
  std::string id;
  std::optional<ImageTensor> image;
  std::optional<BettiCurve> betti;
  int label = kNegative;
};

/// Decodes a raster file, converts to grayscale luminance, resizes
/// bilinearly to side x side and scales intensities to [0, 1].
/// Throws IoError carrying the path when the file cannot be decoded.
ImageTensor load_image(const std::filesystem::path& path, std::size_t side);

/// Bilinear resampling with pixel-centre alignment; identity when the
/// extent already matches.
ImageTensor resize_bilinear(const ImageTensor& image, std::size_t height, std::size_t width);

/// Affine rescale to [0, 1]; a constant image maps to all zeros.
ImageTensor minmax_normalize(const ImageTensor& image);

/// Writes an 8-bit grayscale PNG of an image with values in [0, 1].
void save_png(const std::filesystem::path& path, const ImageTensor& image);

/// Loads <root>/negative/* (label 0) and <root>/positive/* (label 1) in
/// file-name order. Ids are "<class>/<file stem>". Hidden files are skipped.
std::vector<Sample> load_image_folder(const std::filesystem::path& root, std::size_t side);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> holdout;
};

/// Stratified split: each class sends ceil(fraction * class size) of its
/// members, chosen by a seeded shuffle, to the holdout set. Throws when a
/// class would end up entirely on one side. Indices are returned in
/// ascending order.
SplitIndices split_indices(const std::vector<int>& labels, double holdout_fraction, std::uint64_t seed);

std::pair<std::vector<Sample>, std::vector<Sample>> split_dataset(const std::vector<Sample>& samples,
                                                                  double holdout_fraction, std::uint64_t seed);

/// Computes the Betti curve of every sample's image (in parallel, order
/// preserving) and stores it on the sample.
void extract_curves(std::vector<Sample>& samples, const CurveConfig& config);

std::vector<ImageTensor> images_of(const std::vector<Sample>& samples);

}  // namespace topofuse::pipeline
