#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace topofuse::pipeline {

struct BenchRow {
  std::size_t size = 0;
  double mean_ips = 0.0;
  double stddev = 0.0;
  std::vector<double> runs;  // images per second of each repetition
};

/// Times filtration + diagram + 100-sample curve on seeded uniform random
/// size x size images, reps timed runs per size.
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint64_t seed);

/// Aligned `size mean_ips stddev` table with a header line.
void print_bench(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace topofuse::pipeline
