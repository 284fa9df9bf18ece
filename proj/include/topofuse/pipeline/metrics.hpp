#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace topofuse::pipeline {

struct Confusion {
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tp = 0;

  std::size_t total() const noexcept { return tn + fp + fn + tp; }
};

/// Binary classification summary with label 1 as the positive class. Ratios
/// with a zero denominator are reported as 0 and named in flags.
struct EvalReport {
  Confusion confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double tnr = 0.0;
  std::vector<std::string> flags;
};

EvalReport evaluate_metrics(const std::vector<int>& predictions, const std::vector<int>& labels);

/// {"variant", "seed", "accuracy", "precision", "recall", "f1", "tnr",
///  "confusion": {"tn", "fp", "fn", "tp"}, "flags": [...]} in that key order.
std::string metrics_json(const EvalReport& report, const std::string& variant, std::uint64_t seed);

}  // namespace topofuse::pipeline
