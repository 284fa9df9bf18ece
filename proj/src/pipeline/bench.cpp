#include "topofuse/pipeline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "topofuse/errors.hpp"
#include "topofuse/random.hpp"
#include "topofuse/vectorize.hpp"

namespace topofuse::pipeline {

namespace {

// Each repetition processes about a million pixels whatever the size.
constexpr std::size_t kPixelsPerRep = std::size_t{1} << 20;

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint64_t seed) {
  if (sizes.empty()) throw ArgumentError("no bench sizes given");
  if (reps == 0) throw ArgumentError("reps must be positive");
  CurveConfig config;
  config.n = 100;

  std::vector<BenchRow> rows;
  for (std::size_t size : sizes) {
    if (size == 0) throw ArgumentError("bench sizes must be positive");
    const std::size_t count = std::max<std::size_t>(1, kPixelsPerRep / (size * size));
    Rng rng(derive_seed(seed, size));
    std::vector<ImageTensor> images;
    images.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> values(size * size);
      for (double& v : values) v = rng.uniform();
      images.emplace_back(size, size, std::move(values));
    }

    BenchRow row;
    row.size = size;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      for (const ImageTensor& image : images) vectorize_image(image, config);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      row.runs.push_back(static_cast<double>(count) / std::max(elapsed.count(), 1e-9));
    }

    double sum = 0.0;
    for (double v : row.runs) sum += v;
    row.mean_ips = sum / static_cast<double>(reps);
    double sq = 0.0;
    for (double v : row.runs) sq += (v - row.mean_ips) * (v - row.mean_ips);
    row.stddev = reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_bench(std::ostream& out, const std::vector<BenchRow>& rows) {
  char line[96];
  std::snprintf(line, sizeof line, "%8s %14s %12s\n", "size", "mean_ips", "stddev");
  out << line;
  for (const BenchRow& row : rows) {
    std::snprintf(line, sizeof line, "%8zu %14.2f %12.2f\n", row.size, row.mean_ips, row.stddev);
    out << line;
  }
}

}  // namespace topofuse::pipeline
