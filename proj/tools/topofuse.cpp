// topofuse: command-line driver for curve extraction, training, evaluation,
// synthetic data and benchmarking.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "topofuse/errors.hpp"
#include "topofuse/format.hpp"
#include "topofuse/neural/serialize.hpp"
#include "topofuse/persistence.hpp"
#include "topofuse/pipeline/bench.hpp"
#include "topofuse/pipeline/dataset.hpp"
#include "topofuse/pipeline/experiment.hpp"
#include "topofuse/pipeline/features.hpp"
#include "topofuse/pipeline/metrics.hpp"
#include "topofuse/pipeline/synthetic.hpp"

namespace fs = std::filesystem;
using namespace topofuse;
using namespace topofuse::pipeline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;

constexpr std::size_t kDefaultDataSide = 128;

// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string data_dir;
  std::size_t synthetic = 0;
  std::optional<std::uint64_t> data_seed;
  std::size_t side = 0;
  double noise = BlobOptions{}.noise;
  bool minmax = false;
  std::string features;

  bool has_images() const { return !data_dir.empty() || synthetic > 0; }
};

struct CurveOptions {
  std::size_t curve_len = 100;
  std::string range = "auto";
  double min_persistence = 0.0;
  bool normalize = false;
  unsigned workers = 0;
  std::string cache_dir;
};

void add_image_source(CLI::App& cmd, InputOptions& in) {
  auto* data = cmd.add_option("--data", in.data_dir, "Directory with positive/ and negative/ image folders")
                   ->check(CLI::ExistingDirectory);
  auto* synthetic =
      cmd.add_option("--synthetic", in.synthetic, "Generate N synthetic blob images per class instead of --data")
          ->check(CLI::PositiveNumber);
  data->excludes(synthetic);
  cmd.add_option("--side", in.side, "Image side after resizing (default 128 for --data, 64 for --synthetic)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  cmd.add_option("--noise", in.noise, "Noise level of synthetic images")->check(CLI::NonNegativeNumber);
  cmd.add_flag("--minmax", in.minmax, "Rescale every image to [0, 1] before use");
}

void add_curve_options(CLI::App& cmd, CurveOptions& c) {
  cmd.add_option("--curve-len", c.curve_len, "Number of Betti curve samples")->check(CLI::PositiveNumber);
  cmd.add_option("--range", c.range, "Threshold range: auto, global or LO:HI");
  cmd.add_option("--min-persistence", c.min_persistence, "Drop bars with persistence at or below this")
      ->check(CLI::NonNegativeNumber);
  cmd.add_flag("--normalize", c.normalize, "Divide each curve by its maximum");
  cmd.add_option("--workers", c.workers, "Extraction threads (0 = all cores)");
  cmd.add_option("--cache-dir", c.cache_dir, "Directory for cached curves");
}

CurveConfig curve_config(const CurveOptions& c) {
  CurveConfig config;
  config.n = c.curve_len;
  config.min_persistence = c.min_persistence;
  config.normalize = c.normalize;
  config.workers = c.workers;
  if (c.range == "auto") {
    config.range = RangeMode::kAuto;
  } else if (c.range == "global") {
    config.range = RangeMode::kGlobal;
  } else {
    const std::size_t colon = c.range.find(':');
    if (colon == std::string::npos) throw UsageError("--range must be auto, global or LO:HI, got " + c.range);
    try {
      config.t_min = parse_real(c.range.substr(0, colon));
      config.t_max = parse_real(c.range.substr(colon + 1));
    } catch (const ArgumentError&) {
      throw UsageError("--range bounds are not numbers: " + c.range);
    }
    if (config.t_min > config.t_max) throw UsageError("--range needs LO <= HI, got " + c.range);
    config.range = RangeMode::kFixed;
  }
  return config;
}

std::vector<Sample> load_images(const InputOptions& in, std::uint64_t default_seed) {
  std::vector<Sample> samples;
  if (!in.data_dir.empty()) {
    samples = load_image_folder(in.data_dir, in.side != 0 ? in.side : kDefaultDataSide);
  } else {
    BlobOptions blobs;
    if (in.side != 0) blobs.side = in.side;
    blobs.noise = in.noise;
    samples = generate_blob_dataset(in.synthetic, in.data_seed.value_or(default_seed), blobs);
  }
  if (in.minmax) {
    for (Sample& s : samples) s.image = minmax_normalize(*s.image);
  }
  return samples;
}

void compute_curves(std::vector<Sample>& samples, const CurveOptions& c) {
  const CurveConfig config = curve_config(c);
  if (c.cache_dir.empty()) {
    extract_curves(samples, config);
  } else {
    extract_curves_cached(samples, config, CurveCache(c.cache_dir));
  }
}

// Samples for train/eval: images when given, curves from --features when
// given, otherwise computed from the images if the variant needs them.
std::vector<Sample> gather_samples(const InputOptions& in, const CurveOptions& c, std::uint64_t seed,
                                   neural::Variant variant) {
  const std::string name = neural::variant_name(variant);
  if (neural::variant_uses_image(variant) && !in.has_images()) {
    throw UsageError("variant " + name + " needs images: pass --data or --synthetic");
  }
  if (neural::variant_uses_betti(variant) && !in.has_images() && in.features.empty()) {
    throw UsageError("variant " + name + " needs Betti features: pass --features, --data or --synthetic");
  }

  std::vector<Sample> samples;
  if (in.has_images()) samples = load_images(in, seed);
  if (!neural::variant_uses_betti(variant)) return samples;
  if (!in.features.empty()) {
    std::vector<Sample> features = read_feature_csv(in.features);
    if (samples.empty()) return features;
    attach_features(samples, features);
  } else {
    compute_curves(samples, c);
  }
  return samples;
}

void print(const std::string& text) {
  std::fwrite(text.data(), 1, text.size(), stdout);
  std::fflush(stdout);
}

// ---- subcommands -----------------------------------------------------------

struct GenerateArgs {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t side = BlobOptions{}.side;
  double noise = BlobOptions{}.noise;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  BlobOptions options;
  options.side = a.side;
  options.noise = a.noise;
  const std::vector<Sample> samples = generate_blob_dataset(a.count, a.seed, options);
  const fs::path root(a.out);
  for (const char* dir : {"positive", "negative"}) {
    std::error_code ec;
    fs::create_directories(root / dir, ec);
    if (ec) throw IoError((root / dir).string(), "cannot create directory");
  }
  for (const Sample& s : samples) save_png(root / (s.id + ".png"), *s.image);
  print("wrote " + std::to_string(samples.size()) + " images to " + a.out + "\n");
}

struct ExtractArgs {
  InputOptions in;
  CurveOptions curve;
  std::uint64_t seed = 0;
  std::string out;
  std::string diagrams;
};

void cmd_extract(const ExtractArgs& a) {
  if (!a.in.has_images()) throw UsageError("extract needs --data or --synthetic");
  const CurveConfig config = curve_config(a.curve);
  std::vector<Sample> samples = load_images(a.in, a.seed);
  compute_curves(samples, a.curve);
  write_feature_csv(a.out, samples);

  if (!a.diagrams.empty()) {
    for (const Sample& s : samples) {
      PersistenceDiagram pd = compute_pd0(*s.image);
      if (config.min_persistence > 0.0) pd = filter_bars(pd, config.min_persistence);
      const fs::path path = fs::path(a.diagrams) / (s.id + ".csv");
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
      if (ec) throw IoError(path.parent_path().string(), "cannot create directory");
      write_file_atomic(path, format_diagram(pd));
    }
  }
  print("wrote " + std::to_string(samples.size()) + " rows to " + a.out + "\n");
}

struct TrainArgs {
  InputOptions in;
  CurveOptions curve;
  std::string variant;
  std::uint64_t seed = 0;
  int epochs = neural::TrainConfig{}.epochs;
  double lr = neural::TrainConfig{}.learning_rate;
  std::size_t batch = neural::TrainConfig{}.batch_size;
  std::string optimizer = "adam";
  std::string precision = "single";
  double holdout = 0.2;
  std::string out;
  std::string metrics;
};

void cmd_train(const TrainArgs& a) {
  ExperimentConfig config;
  config.variant = neural::parse_variant(a.variant);
  config.curve = curve_config(a.curve);
  config.train.learning_rate = a.lr;
  config.train.epochs = a.epochs;
  config.train.batch_size = a.batch;
  config.train.optimizer = a.optimizer == "sgd" ? neural::OptimizerKind::kSgd : neural::OptimizerKind::kAdam;
  config.train.precision = a.precision == "double" ? neural::Precision::kDouble : neural::Precision::kSingle;
  config.train.seed = a.seed;
  config.train.validate();
  config.holdout_fraction = a.holdout;
  config.model_path = a.out;
  config.metrics_path = a.metrics.empty() ? fs::path(a.out).replace_extension(".json") : fs::path(a.metrics);
  if (config.metrics_path == config.model_path) throw UsageError("--metrics must differ from --out");

  std::vector<Sample> samples = gather_samples(a.in, a.curve, a.seed, config.variant);
  const ExperimentResult result = run_experiment(std::move(samples), config);
  print(result.metrics_json);
}

struct EvalArgs {
  InputOptions in;
  CurveOptions curve;
  std::string model;
  std::optional<double> holdout;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_eval(const EvalArgs& a) {
  const neural::Model model = neural::load_model(a.model);
  const neural::Variant variant = neural::parse_variant(model.spec.name);
  std::vector<Sample> samples = gather_samples(a.in, a.curve, a.seed, variant);
  if (samples.empty()) throw UsageError("no samples to evaluate");
  if (a.holdout) samples = split_dataset(samples, *a.holdout, a.seed).second;

  const std::string json = metrics_json(evaluate_model(model, samples), model.spec.name, a.seed);
  if (!a.out.empty()) write_file_atomic(a.out, json);
  print(json);
}

struct BenchArgs {
  std::vector<std::size_t> sizes = {64, 128, 256};
  std::size_t reps = 5;
  std::uint64_t seed = 0;
};

void cmd_bench(const BenchArgs& a) {
  const std::vector<BenchRow> rows = run_bench(a.sizes, a.reps, a.seed);
  print_bench(std::cout, rows);
  std::cout.flush();
}

std::string one_line(std::string message) {
  for (char& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return message;
}

int fail(int code, const std::string& message) {
  std::fprintf(stderr, "topofuse: %s\n", one_line(message).c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological feature extraction and two-stream classification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file of option values; [section] per subcommand; flags win");
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic blob dataset as PNG files");
  generate->add_option("--count", gen.count, "Images per class")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--side", gen.side, "Image side")->check(CLI::Range(std::size_t{16}, std::size_t{4096}));
  generate->add_option("--noise", gen.noise, "Pixel noise level")->check(CLI::NonNegativeNumber);
  generate->add_option("--out", gen.out, "Output directory")->required();

  ExtractArgs ext;
  auto* extract = app.add_subcommand("extract", "Compute Betti curves into a feature CSV");
  add_image_source(*extract, ext.in);
  extract->add_option("--seed", ext.seed, "Seed for --synthetic data");
  add_curve_options(*extract, ext.curve);
  extract->add_option("--out", ext.out, "Feature CSV to write")->required();
  extract->add_option("--emit-diagrams", ext.diagrams, "Also write one persistence diagram per sample here");

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train a network and report holdout metrics");
  train->add_option("--variant", tr.variant, "Network variant")
      ->required()
      ->check(CLI::IsMember({"base", "tda1", "tda12", "tda123"}));
  add_image_source(*train, tr.in);
  train->add_option("--data-seed", tr.in.data_seed, "Seed for --synthetic data (default: --seed)");
  train->add_option("--features", tr.in.features, "Feature CSV from extract")->check(CLI::ExistingFile);
  add_curve_options(*train, tr.curve);
  train->add_option("--seed", tr.seed, "Seed for the split, initialisation and shuffling");
  train->add_option("--epochs", tr.epochs, "Training epochs")->check(CLI::PositiveNumber);
  train->add_option("--lr", tr.lr, "Learning rate")->check(CLI::PositiveNumber);
  train->add_option("--batch", tr.batch, "Mini-batch size")->check(CLI::PositiveNumber);
  train->add_option("--optimizer", tr.optimizer, "adam or sgd")->check(CLI::IsMember({"adam", "sgd"}));
  train->add_option("--precision", tr.precision, "single or double")->check(CLI::IsMember({"single", "double"}));
  train->add_option("--holdout", tr.holdout, "Holdout fraction")->check(CLI::Range(0.0, 1.0));
  train->add_option("--out", tr.out, "Model file to write")->required();
  train->add_option("--metrics", tr.metrics, "Metrics JSON to write (default: model path with .json)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a saved model");
  eval->add_option("--model", ev.model, "Model file")->required();
  add_image_source(*eval, ev.in);
  eval->add_option("--data-seed", ev.in.data_seed, "Seed for --synthetic data (default: --seed)");
  eval->add_option("--features", ev.in.features, "Feature CSV from extract")->check(CLI::ExistingFile);
  add_curve_options(*eval, ev.curve);
  eval->add_option("--holdout", ev.holdout, "Evaluate only the holdout split of this fraction")
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--seed", ev.seed, "Split seed used with --holdout");
  eval->add_option("--out", ev.out, "Metrics JSON to write");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Throughput of filtration + diagram + curve");
  bench->add_option("--sizes", be.sizes, "Comma-separated image sides")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--reps", be.reps, "Timed repetitions per size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", be.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitUsage, e.what());
  }

  try {
    if (*generate) cmd_generate(gen);
    if (*extract) cmd_extract(ext);
    if (*train) cmd_train(tr);
    if (*eval) cmd_eval(ev);
    if (*bench) cmd_bench(be);
  } catch (const FormatError& e) {
    return fail(kExitFormat, e.what());
  } catch (const UsageError& e) {
    return fail(kExitUsage, e.what());
  } catch (const ArgumentError& e) {
    return fail(kExitUsage, e.what());
  } catch (const IoError& e) {
    return fail(kExitUsage, e.what());
  } catch (const ShapeError& e) {
    return fail(kExitUsage, e.what());
  } catch (const TrainingError& e) {
    return fail(kExitFailure, std::string("training failed: ") + e.what());
  } catch (const std::exception& e) {
    return fail(kExitFailure, e.what());
  }
  return kExitOk;
}
