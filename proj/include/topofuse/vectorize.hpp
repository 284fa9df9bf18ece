#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "topofuse/image.hpp"
#include "topofuse/persistence.hpp"

namespace topofuse {

/// beta_0 sampled at n evenly spaced thresholds over [t_min, t_max], both
/// endpoints included.
struct BettiCurve {
  std::vector<double> samples;
  double t_min = 0.0;
  double t_max = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
};

enum class RangeMode {
  kAuto,    // per-image [global_min, global_max]
  kGlobal,  // [min, max] over the whole dataset
  kFixed,   // caller supplied [t_min, t_max]
};

struct CurveConfig {
  std::size_t n = 100;
  RangeMode range = RangeMode::kAuto;
  double t_min = 0.0;
  double t_max = 1.0;
  /// Bars with persistence <= this are dropped before sampling (the
  /// essential bar is always kept). 0 keeps every bar that can matter.
  double min_persistence = 0.0;
  /// Divide each curve by its maximum so samples land in [0, 1].
  bool normalize = false;
  /// Worker threads for dataset extraction; 0 picks hardware concurrency.
  unsigned workers = 0;
};

/// The k-th sample threshold; the last one is exactly t_max.
double curve_threshold(double t_min, double t_max, std::size_t n, std::size_t k);

BettiCurve betti_curve(const PersistenceDiagram& pd, double t_min, double t_max, std::size_t n);

/// Filtration, diagram and curve for one image. kGlobal behaves like kAuto
/// here since a single image is its own dataset.
BettiCurve vectorize_image(const ImageTensor& image, const CurveConfig& config);

/// Row-major (images x n) feature matrix. Rows follow input order even when
/// extraction runs on several threads.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
};

FeatureMatrix vectorize_dataset(std::span<const ImageTensor> images, const CurveConfig& config);

/// Resolves kGlobal to a concrete kFixed config for the given images.
CurveConfig resolve_range(std::span<const ImageTensor> images, const CurveConfig& config);

}  // namespace topofuse
