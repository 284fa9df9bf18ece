#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "topofuse/neural/network.hpp"
#include "topofuse/neural/serialize.hpp"
#include "topofuse/neural/train.hpp"
#include "topofuse/pipeline/dataset.hpp"
#include "topofuse/pipeline/metrics.hpp"
#include "topofuse/vectorize.hpp"

namespace topofuse::pipeline {

struct ExperimentConfig {
  neural::Variant variant = neural::Variant::kTda1;
  CurveConfig curve;
  neural::TrainConfig train;
  double holdout_fraction = 0.2;
  /// When non-empty, the model and metrics files are written here.
  std::filesystem::path model_path;
  std::filesystem::path metrics_path;
};

struct ExperimentResult {
  EvalReport report;
  neural::Model model;
  std::vector<double> loss_history;
  std::string metrics_json;
};

/// Network spec sized for the samples: image side from the first image,
/// curve length from the first curve.
neural::NetworkSpec spec_for(neural::Variant variant, const std::vector<Sample>& samples);

/// Predictions of a stored model. Parameters are widened from f32 to double
/// so train-time and load-time evaluation agree exactly.
std::vector<int> predict_samples(const neural::Model& model, const std::vector<Sample>& samples);

EvalReport evaluate_model(const neural::Model& model, const std::vector<Sample>& samples);

/// Extracts curves where the variant needs them and they are missing, splits,
/// trains, evaluates on the holdout and writes the artifacts. Artifacts
/// written before a failure are removed.
ExperimentResult run_experiment(std::vector<Sample> samples, const ExperimentConfig& config);

}  // namespace topofuse::pipeline
