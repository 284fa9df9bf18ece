#include "topofuse/vectorize.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "topofuse/errors.hpp"

namespace topofuse {

double curve_threshold(double t_min, double t_max, std::size_t n, std::size_t k) {
  if (n <= 1 || t_min == t_max) return t_min;
  if (k + 1 == n) return t_max;
  return t_min + (t_max - t_min) * static_cast<double>(k) / static_cast<double>(n - 1);
}

BettiCurve betti_curve(const PersistenceDiagram& pd, double t_min, double t_max, std::size_t n) {
  if (n == 0) throw ArgumentError("curve length must be positive");
  if (!(t_min <= t_max)) throw ArgumentError("t_min must not exceed t_max");

  // beta_0(t) = #{births <= t} - #{non-essential deaths <= t}; bars with
  // birth == death cancel out, matching the half-open liveness rule.
  std::vector<double> births;
  std::vector<double> deaths;
  births.reserve(pd.bars.size());
  deaths.reserve(pd.bars.size());
  for (const PersistentBar& bar : pd.bars) {
    births.push_back(bar.birth);
    if (!bar.essential) deaths.push_back(bar.death);
  }
  std::sort(births.begin(), births.end());
  std::sort(deaths.begin(), deaths.end());

  BettiCurve curve;
  curve.t_min = t_min;
  curve.t_max = t_max;
  curve.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = curve_threshold(t_min, t_max, n, k);
    const auto born = std::upper_bound(births.begin(), births.end(), t) - births.begin();
    const auto died = std::upper_bound(deaths.begin(), deaths.end(), t) - deaths.begin();
    curve.samples[k] = static_cast<double>(born - died);
  }
  return curve;
}

namespace {

void normalize_curve(BettiCurve& curve) {
  const double peak = *std::max_element(curve.samples.begin(), curve.samples.end());
  if (peak > 0.0) {
    for (double& s : curve.samples) s /= peak;
  }
}

}  // namespace

BettiCurve vectorize_image(const ImageTensor& image, const CurveConfig& config) {
  if (config.n == 0) throw ArgumentError("curve length must be positive");
  if (config.min_persistence < 0.0) throw ArgumentError("min_persistence must be non-negative");
  PersistenceDiagram pd = compute_pd0(image);
  if (config.min_persistence > 0.0) pd = filter_bars(pd, config.min_persistence);
  BettiCurve curve = config.range == RangeMode::kFixed
                         ? betti_curve(pd, config.t_min, config.t_max, config.n)
                         : betti_curve(pd, pd.global_min, pd.global_max, config.n);
  if (config.normalize) normalize_curve(curve);
  return curve;
}

CurveConfig resolve_range(std::span<const ImageTensor> images, const CurveConfig& config) {
  if (images.empty()) throw ArgumentError("no images to vectorize");
  CurveConfig resolved = config;
  if (config.range == RangeMode::kGlobal) {
    double lo = images.front().min_value();
    double hi = images.front().max_value();
    for (const ImageTensor& image : images) {
      lo = std::min(lo, image.min_value());
      hi = std::max(hi, image.max_value());
    }
    resolved.range = RangeMode::kFixed;
    resolved.t_min = lo;
    resolved.t_max = hi;
  }
  return resolved;
}

FeatureMatrix vectorize_dataset(std::span<const ImageTensor> images, const CurveConfig& config) {
  const CurveConfig resolved = resolve_range(images, config);
  if (resolved.n == 0) throw ArgumentError("curve length must be positive");

  FeatureMatrix out;
  out.rows = images.size();
  out.cols = resolved.n;
  out.values.resize(out.rows * out.cols);

  unsigned workers = resolved.workers != 0 ? resolved.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(images.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < images.size(); i = next++) {
        const BettiCurve curve = vectorize_image(images[i], resolved);
        std::copy(curve.samples.begin(), curve.samples.end(), out.values.begin() + i * out.cols);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace topofuse
