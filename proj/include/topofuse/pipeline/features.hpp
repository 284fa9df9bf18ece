#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "topofuse/image.hpp"
#include "topofuse/pipeline/dataset.hpp"
#include "topofuse/vectorize.hpp"

namespace topofuse::pipeline {

/// Feature cache CSV: header `id,label,b0,...,b{n-1}`, one row per sample,
/// LF line endings. Every sample must carry a curve of the same length.
void write_feature_csv(const std::filesystem::path& path, const std::vector<Sample>& samples);
std::string format_feature_csv(const std::vector<Sample>& samples);

/// Samples with id, label and betti set; no images.
std::vector<Sample> read_feature_csv(const std::filesystem::path& path);

/// Copies curves from features onto samples by id. Throws ArgumentError
/// naming the first sample without a matching row or with a different label.
void attach_features(std::vector<Sample>& samples, const std::vector<Sample>& features);

/// Writes bytes to path through a uniquely named temporary file and an
/// atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

/// On-disk memo of Betti curves keyed by image content and the fully
/// resolved curve configuration. Safe to share between concurrent runs.
class CurveCache {
 public:
  explicit CurveCache(std::filesystem::path directory);

  static std::uint64_t key(const ImageTensor& image, const CurveConfig& resolved);

  std::optional<BettiCurve> lookup(std::uint64_t key) const;
  void store(std::uint64_t key, const BettiCurve& curve) const;

  /// vectorize_image through the cache.
  BettiCurve get(const ImageTensor& image, const CurveConfig& resolved) const;

 private:
  std::filesystem::path path_for(std::uint64_t key) const;

  std::filesystem::path directory_;
};

/// extract_curves with a cache; global ranges are resolved first.
void extract_curves_cached(std::vector<Sample>& samples, const CurveConfig& config, const CurveCache& cache);

}  // namespace topofuse::pipeline
