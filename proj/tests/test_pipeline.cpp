#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "support/flood_fill.hpp"
#include "support/temp_dir.hpp"
#include "topofuse/errors.hpp"
#include "topofuse/neural/serialize.hpp"
#include "topofuse/persistence.hpp"
#include "topofuse/pipeline/bench.hpp"
#include "topofuse/pipeline/dataset.hpp"
#include "topofuse/pipeline/experiment.hpp"
#include "topofuse/pipeline/features.hpp"
#include "topofuse/pipeline/metrics.hpp"
#include "topofuse/pipeline/synthetic.hpp"
#include "topofuse/random.hpp"

namespace topofuse::pipeline {
namespace {

using testing::TempDir;
using testing::read_bytes;

ImageTensor columns_image(std::vector<double> cols) {
  std::vector<double> v;
  for (int r = 0; r < 4; ++r) v.insert(v.end(), cols.begin(), cols.end());
  return ImageTensor(4, cols.size(), std::move(v));
}

// ---- image loading -------------------------------------------------------

TEST(LoadImage, ConstantSurvivesGrayscaleAndResize) {
  TempDir dir;
  save_png(dir / "c.png", ImageTensor::constant(256, 256, 180.0 / 255.0));
  const ImageTensor image = load_image(dir / "c.png", 128);
  ASSERT_EQ(image.height(), 128u);
  ASSERT_EQ(image.width(), 128u);
  for (double v : image.values()) EXPECT_NEAR(v, 0.7059, 1e-4);
}

TEST(LoadImage, MatchingSizeIsOnlyRescaled) {
  TempDir dir;
  std::vector<double> v(128 * 128);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>((i * 37) % 256) / 255.0;
  save_png(dir / "g.png", ImageTensor(128, 128, v));
  const ImageTensor image = load_image(dir / "g.png", 128);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_DOUBLE_EQ(image.at(i), v[i]);
}

TEST(LoadImage, NonSquareSourceIsResizedToSquare) {
  TempDir dir;
  save_png(dir / "odd.png", ImageTensor::constant(7, 5, 0.2));
  const ImageTensor image = load_image(dir / "odd.png", 16);
  for (double v : image.values()) EXPECT_NEAR(v, 51.0 / 255.0, 1e-12);
}

TEST(LoadImage, MissingOrCorruptFileReportsPath) {
  TempDir dir;
  const auto missing = dir / "nope.png";
  try {
    load_image(missing, 16);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), missing.string());
  }
  const auto corrupt = dir / "bad.png";
  std::ofstream(corrupt) << "not an image";
  try {
    load_image(corrupt, 16);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), corrupt.string());
  }
}

// Hand-evaluated bilinear weights: halving 4 columns samples source x = 0.5
// and x = 2.5, the midpoints of column pairs (0,1) and (2,3).
TEST(ResizeBilinear, HalvingAveragesColumnPairs) {
  const ImageTensor split = resize_bilinear(columns_image({0, 0, 1, 1}), 2, 2);
  EXPECT_EQ(split.values()[0], 0.0);
  EXPECT_EQ(split.values()[1], 1.0);
  const ImageTensor shifted = resize_bilinear(columns_image({0, 1, 1, 1}), 2, 2);
  EXPECT_DOUBLE_EQ(shifted.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(shifted.at(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(shifted.at(1, 0), 0.5);
}

TEST(ResizeBilinear, UpsamplingStaysWithinSourceRange) {
  const ImageTensor up = resize_bilinear(columns_image({0, 0, 1, 1}), 8, 8);
  EXPECT_EQ(up.at(0, 0), 0.0);
  EXPECT_EQ(up.at(0, 7), 1.0);
  // Source x = (4 + 0.5) / 2 - 0.5 = 1.75: a quarter of the way into the
  // 0 -> 1 step between columns 1 and 2.
  EXPECT_DOUBLE_EQ(up.at(3, 4), 0.75);
  for (double v : up.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(MinmaxNormalize, MapsOntoUnitInterval) {
  const ImageTensor n = minmax_normalize(ImageTensor::row({2.0, 4.0, 3.0}));
  EXPECT_EQ(n, ImageTensor::row({0.0, 1.0, 0.5}));
  EXPECT_EQ(minmax_normalize(ImageTensor::constant(2, 2, 5.0)), ImageTensor::constant(2, 2, 0.0));
}

TEST(LoadImageFolder, ReadsBothClassesInNameOrder) {
  TempDir dir;
  std::filesystem::create_directories(dir / "positive");
  std::filesystem::create_directories(dir / "negative");
  save_png(dir / "positive/b.png", ImageTensor::constant(8, 8, 1.0));
  save_png(dir / "positive/a.png", ImageTensor::constant(8, 8, 0.5));
  save_png(dir / "negative/z.png", ImageTensor::constant(8, 8, 0.0));
  std::ofstream(dir / "negative/.DS_Store") << "junk";

  const std::vector<Sample> samples = load_image_folder(dir.path(), 16);
  ASSERT_EQ(samples.size(), 3u);
  EXPECT_EQ(samples[0].id, "negative/z");
  EXPECT_EQ(samples[0].label, kNegative);
  EXPECT_EQ(samples[1].id, "positive/a");
  EXPECT_EQ(samples[2].id, "positive/b");
  EXPECT_EQ(samples[2].label, kPositive);
  EXPECT_EQ(samples[1].image->height(), 16u);
}

TEST(LoadImageFolder, EmptyOrMissingDirectoryThrows) {
  TempDir dir;
  EXPECT_THROW(load_image_folder(dir / "absent", 16), IoError);
  std::filesystem::create_directories(dir / "positive");
  std::filesystem::create_directories(dir / "negative");
  EXPECT_THROW(load_image_folder(dir.path(), 16), IoError);
}

// ---- splitting -----------------------------------------------------------

std::vector<int> balanced_labels(std::size_t per_class) {
  std::vector<int> labels(per_class, 1);
  labels.insert(labels.end(), per_class, 0);
  return labels;
}

TEST(Split, TwentyPercentOf287PerClassIs58PerClass) {
  const std::vector<int> labels = balanced_labels(287);
  const SplitIndices split = split_indices(labels, 0.2, 3);
  ASSERT_EQ(split.holdout.size(), 116u);
  std::size_t positives = 0;
  for (std::size_t i : split.holdout) positives += labels[i];
  EXPECT_EQ(positives, 58u);
}

TEST(Split, ExactProductsAreNotRoundedUp) {
  const std::vector<int> labels = balanced_labels(10);
  EXPECT_EQ(split_indices(labels, 0.7, 0).holdout.size(), 14u);
  EXPECT_EQ(split_indices(labels, 0.3, 0).holdout.size(), 6u);
}

TEST(Split, HalfOfEightIsTwoPerClass) {
  const std::vector<int> labels = balanced_labels(4);
  const SplitIndices split = split_indices(labels, 0.5, 1);
  ASSERT_EQ(split.holdout.size(), 4u);
  std::size_t positives = 0;
  for (std::size_t i : split.holdout) positives += labels[i];
  EXPECT_EQ(positives, 2u);
}

TEST(Split, PartitionsForAnyFractionAndSeed) {
  const std::vector<int> labels = {1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1};
  for (double fraction : {0.1, 0.25, 0.33, 0.5, 0.7}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SplitIndices split = split_indices(labels, fraction, seed);
      std::set<std::size_t> seen(split.train.begin(), split.train.end());
      for (std::size_t i : split.holdout) EXPECT_TRUE(seen.insert(i).second);
      EXPECT_EQ(seen.size(), labels.size());
      EXPECT_TRUE(std::is_sorted(split.train.begin(), split.train.end()));
      EXPECT_TRUE(std::is_sorted(split.holdout.begin(), split.holdout.end()));
    }
  }
}

TEST(Split, SeededAndSeedSensitive) {
  const std::vector<int> labels = balanced_labels(50);
  EXPECT_EQ(split_indices(labels, 0.2, 9).holdout, split_indices(labels, 0.2, 9).holdout);
  EXPECT_NE(split_indices(labels, 0.2, 9).holdout, split_indices(labels, 0.2, 10).holdout);
}

TEST(Split, RejectsDegenerateRequests) {
  EXPECT_THROW(split_indices(balanced_labels(4), 0.0, 0), ArgumentError);
  EXPECT_THROW(split_indices(balanced_labels(4), 1.0, 0), ArgumentError);
  EXPECT_THROW(split_indices({1, 1, 1}, 0.5, 0), ArgumentError);
  // ceil(0.9 * 2) = 2 leaves no training sample of either class.
  EXPECT_THROW(split_indices(balanced_labels(2), 0.9, 0), ArgumentError);
}

TEST(Split, DatasetKeepsSamplesIntact) {
  const std::vector<Sample> samples = generate_blob_dataset(5, 2, {.side = 16});
  const auto [train, holdout] = split_dataset(samples, 0.4, 4);
  EXPECT_EQ(train.size(), 6u);
  EXPECT_EQ(holdout.size(), 4u);
  for (const Sample& s : holdout) {
    const auto it = std::find_if(samples.begin(), samples.end(), [&](const Sample& o) { return o.id == s.id; });
    ASSERT_NE(it, samples.end());
    EXPECT_EQ(*it->image, *s.image);
  }
}

// ---- synthetic data ------------------------------------------------------

TEST(BlobDataset, CountsLabelsAndIds) {
  const std::vector<Sample> samples = generate_blob_dataset(50, 1, {.side = 32});
  ASSERT_EQ(samples.size(), 100u);
  EXPECT_EQ(std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return s.label == 1; }), 50);
  EXPECT_EQ(samples.front().id, "negative/blob_0000");
  EXPECT_EQ(samples.back().id, "positive/blob_0049");
  for (const Sample& s : samples) {
    EXPECT_EQ(s.image->height(), 32u);
    EXPECT_GE(s.image->min_value(), 0.0);
    EXPECT_LE(s.image->max_value(), 1.0);
  }
}

TEST(BlobDataset, Deterministic) {
  const auto a = generate_blob_dataset(10, 7);
  const auto b = generate_blob_dataset(10, 7);
  const auto c = generate_blob_dataset(10, 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(*a[i].image, *b[i].image);
    EXPECT_NE(*a[i].image, *c[i].image);
  }
}

TEST(BlobDataset, NoiselessBlobCountIsRecoverable) {
  BlobOptions options;
  options.noise = 0.0;
  CurveConfig mid;
  mid.n = 50;
  mid.range = RangeMode::kFixed;
  mid.t_min = 0.45;
  mid.t_max = 0.75;
  for (std::size_t k = 1; k <= 8; ++k) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const ImageTensor image = render_blob_image(k, seed, options);
      EXPECT_EQ(testing::flood_fill_components(image, 0.6), k);
      const BettiCurve curve = vectorize_image(image, mid);
      EXPECT_EQ(*std::max_element(curve.samples.begin(), curve.samples.end()), static_cast<double>(k));
    }
  }
}

TEST(BlobDataset, GeneratedClassesHaveTheirBlobCounts) {
  BlobOptions options;
  options.noise = 0.0;
  for (const Sample& s : generate_blob_dataset(20, 3, options)) {
    const std::size_t k = testing::flood_fill_components(*s.image, 0.6);
    if (s.label == kPositive) {
      EXPECT_GE(k, 6u);
      EXPECT_LE(k, 8u);
    } else {
      EXPECT_GE(k, 1u);
      EXPECT_LE(k, 3u);
    }
  }
}

// ---- metrics -------------------------------------------------------------

TEST(Metrics, HandBuiltConfusion) {
  const EvalReport r = evaluate_metrics({1, 1, 0, 0, 0, 1}, {1, 1, 1, 0, 0, 0});
  EXPECT_EQ(r.confusion.tp, 2u);
  EXPECT_EQ(r.confusion.fn, 1u);
  EXPECT_EQ(r.confusion.fp, 1u);
  EXPECT_EQ(r.confusion.tn, 2u);
  for (double m : {r.accuracy, r.precision, r.recall, r.f1, r.tnr}) EXPECT_NEAR(m, 0.6667, 1e-4);
  EXPECT_TRUE(r.flags.empty());
}

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> labels = {0, 1, 1, 0, 1};
  const EvalReport r = evaluate_metrics(labels, labels);
  for (double m : {r.accuracy, r.precision, r.recall, r.f1, r.tnr}) EXPECT_EQ(m, 1.0);
}

TEST(Metrics, ZeroDenominatorsAreFlagged) {
  const EvalReport r = evaluate_metrics({0, 0, 0, 0}, {1, 0, 1, 0});
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.tnr, 1.0);
  EXPECT_NE(std::find(r.flags.begin(), r.flags.end(), "precision_undefined"), r.flags.end());
}

TEST(Metrics, RejectsBadInput) {
  EXPECT_THROW(evaluate_metrics({1, 0}, {1}), ArgumentError);
  EXPECT_THROW(evaluate_metrics({}, {}), ArgumentError);
  EXPECT_THROW(evaluate_metrics({2}, {1}), ArgumentError);
}

TEST(Metrics, IdentitiesHoldOnRandomConfusions) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<int> p(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = static_cast<int>(rng.below(2));
      y[i] = static_cast<int>(rng.below(2));
    }
    const EvalReport r = evaluate_metrics(p, y);
    const Confusion& m = r.confusion;
    EXPECT_EQ(m.total(), n);
    EXPECT_DOUBLE_EQ(r.accuracy * static_cast<double>(n), static_cast<double>(m.tp + m.tn));
    if (r.precision + r.recall > 0.0) {
      EXPECT_NEAR(r.f1, 2.0 / (1.0 / r.precision + 1.0 / r.recall), 1e-12);
    }
    for (double v : {r.accuracy, r.precision, r.recall, r.f1, r.tnr}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Metrics, JsonHasFixedKeyOrder) {
  const std::string json = metrics_json(evaluate_metrics({1, 0}, {1, 0}), "tda1", 7);
  const std::vector<std::string> keys = {"\"variant\"", "\"seed\"", "\"accuracy\"", "\"precision\"", "\"recall\"",
                                         "\"f1\"", "\"tnr\"", "\"confusion\"", "\"tn\"", "\"fp\"", "\"fn\"",
                                         "\"tp\"", "\"flags\""};
  std::size_t at = 0;
  for (const std::string& key : keys) {
    const std::size_t found = json.find(key, at);
    ASSERT_NE(found, std::string::npos) << key;
    at = found;
  }
}

// ---- feature cache -------------------------------------------------------

std::vector<Sample> curve_samples() {
  std::vector<Sample> samples = generate_blob_dataset(3, 11, {.side = 16});
  CurveConfig config;
  config.n = 8;
  extract_curves(samples, config);
  return samples;
}

TEST(FeatureCsv, RoundTripsExactly) {
  TempDir dir;
  const std::vector<Sample> samples = curve_samples();
  write_feature_csv(dir / "f.csv", samples);
  const std::string text = read_bytes(dir / "f.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "id,label,b0,b1,b2,b3,b4,b5,b6,b7");
  EXPECT_EQ(text.find('\r'), std::string::npos);

  const std::vector<Sample> back = read_feature_csv(dir / "f.csv");
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, samples[i].id);
    EXPECT_EQ(back[i].label, samples[i].label);
    EXPECT_EQ(back[i].betti->samples, samples[i].betti->samples);
  }
}

TEST(FeatureCsv, MalformedFilesAreRejected) {
  TempDir dir;
  std::ofstream(dir / "a.csv") << "name,label,b0\nx,1,2\n";
  EXPECT_THROW(read_feature_csv(dir / "a.csv"), IoError);
  std::ofstream(dir / "b.csv") << "id,label,b0\nx,1,2,3\n";
  EXPECT_THROW(read_feature_csv(dir / "b.csv"), IoError);
  std::ofstream(dir / "c.csv") << "id,label,b0\nx,2,1\n";
  EXPECT_THROW(read_feature_csv(dir / "c.csv"), IoError);
  std::ofstream(dir / "d.csv") << "id,label,b0\nx,1,one\n";
  EXPECT_THROW(read_feature_csv(dir / "d.csv"), IoError);
  EXPECT_THROW(read_feature_csv(dir / "missing.csv"), IoError);
}

TEST(FeatureCsv, AttachMatchesById) {
  std::vector<Sample> samples = generate_blob_dataset(3, 11, {.side = 16});
  std::vector<Sample> features = curve_samples();
  std::reverse(features.begin(), features.end());
  attach_features(samples, features);
  for (const Sample& s : samples) ASSERT_TRUE(s.betti.has_value());
  features.pop_back();
  EXPECT_THROW(attach_features(samples, features), ArgumentError);
}

TEST(CurveCache, HitReturnsStoredCurve) {
  TempDir dir;
  const CurveCache cache(dir / "cache");
  const ImageTensor image = render_blob_image(3, 1, {.side = 32});
  CurveConfig config;
  config.n = 20;
  const BettiCurve fresh = cache.get(image, config);
  EXPECT_EQ(fresh.samples, vectorize_image(image, config).samples);
  const auto stored = cache.lookup(CurveCache::key(image, config));
  ASSERT_TRUE(stored.has_value());
  EXPECT_EQ(stored->samples, fresh.samples);
  EXPECT_EQ(stored->t_min, fresh.t_min);
  EXPECT_EQ(cache.get(image, config).samples, fresh.samples);
}

TEST(CurveCache, KeyTracksImageAndConfig) {
  const ImageTensor image = render_blob_image(2, 1, {.side = 16});
  CurveConfig config;
  const std::uint64_t base = CurveCache::key(image, config);
  EXPECT_EQ(CurveCache::key(image, config), base);
  EXPECT_NE(CurveCache::key(image.shifted(1e-9), config), base);
  CurveConfig other = config;
  other.n = 99;
  EXPECT_NE(CurveCache::key(image, other), base);
  other = config;
  other.min_persistence = 0.1;
  EXPECT_NE(CurveCache::key(image, other), base);
  other = config;
  other.normalize = true;
  EXPECT_NE(CurveCache::key(image, other), base);
  // Worker count does not change the result, so it is not part of the key.
  other = config;
  other.workers = 3;
  EXPECT_EQ(CurveCache::key(image, other), base);
}

TEST(CurveCache, DamagedEntryIsRecomputed) {
  TempDir dir;
  const CurveCache cache(dir.path());
  const ImageTensor image = render_blob_image(2, 4, {.side = 16});
  CurveConfig config;
  config.n = 10;
  const BettiCurve good = cache.get(image, config);
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    std::ofstream(entry.path(), std::ios::trunc) << "curve 10\n0 1\n3\n";
  }
  EXPECT_FALSE(cache.lookup(CurveCache::key(image, config)).has_value());
  EXPECT_EQ(cache.get(image, config).samples, good.samples);
}

TEST(ExtractCurves, CachedMatchesDirectAcrossWorkers) {
  TempDir dir;
  std::vector<Sample> direct = generate_blob_dataset(6, 2, {.side = 32});
  std::vector<Sample> cached = direct;
  CurveConfig config;
  config.n = 30;
  config.range = RangeMode::kGlobal;
  config.workers = 1;
  extract_curves(direct, config);
  config.workers = 4;
  extract_curves_cached(cached, config, CurveCache(dir.path()));
  for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_EQ(direct[i].betti->samples, cached[i].betti->samples);
}

// ---- experiment ----------------------------------------------------------

ExperimentConfig small_experiment(const TempDir& dir) {
  ExperimentConfig config;
  config.variant = neural::Variant::kTda1;
  config.curve.n = 40;
  config.train.epochs = 15;
  config.train.seed = 3;
  config.train.precision = neural::Precision::kDouble;
  config.model_path = dir / "model.bin";
  config.metrics_path = dir / "metrics.json";
  return config;
}

TEST(Experiment, TrainsEvaluatesAndWritesArtifacts) {
  TempDir dir;
  const std::vector<Sample> samples = generate_blob_dataset(30, 5, {.side = 32});
  const ExperimentResult result = run_experiment(samples, small_experiment(dir));
  EXPECT_EQ(result.report.confusion.total(), 12u);
  EXPECT_GE(result.report.accuracy, 0.75);
  EXPECT_EQ(read_bytes(dir / "metrics.json"), result.metrics_json);

  // Reloading the stored model and re-evaluating the same holdout gives the
  // same report.
  const neural::Model loaded = neural::load_model(dir / "model.bin");
  std::vector<Sample> with_curves = samples;
  extract_curves(with_curves, small_experiment(dir).curve);
  const auto holdout = split_dataset(with_curves, 0.2, 3).second;
  EXPECT_EQ(metrics_json(evaluate_model(loaded, holdout), "tda1", 3), result.metrics_json);
}

TEST(Experiment, RerunIsByteIdentical) {
  TempDir a, b;
  const std::vector<Sample> samples = generate_blob_dataset(20, 5, {.side = 32});
  run_experiment(samples, small_experiment(a));
  run_experiment(samples, small_experiment(b));
  EXPECT_EQ(read_bytes(a / "metrics.json"), read_bytes(b / "metrics.json"));
  EXPECT_EQ(read_bytes(a / "model.bin"), read_bytes(b / "model.bin"));
}

TEST(Experiment, FailureRemovesPartialArtifacts) {
  TempDir dir;
  ExperimentConfig config = small_experiment(dir);
  config.train.epochs = 1;
  config.metrics_path = dir / "no_such_dir" / "metrics.json";
  EXPECT_THROW(run_experiment(generate_blob_dataset(10, 5, {.side = 16}), config), IoError);
  EXPECT_FALSE(std::filesystem::exists(dir / "model.bin"));
}

TEST(Experiment, ImageVariantsNeedImages) {
  std::vector<Sample> samples = curve_samples();
  for (Sample& s : samples) s.image.reset();
  ExperimentConfig config;
  config.variant = neural::Variant::kBase;
  EXPECT_THROW(run_experiment(samples, config), ArgumentError);
  config.variant = neural::Variant::kTda12;
  EXPECT_THROW(run_experiment(samples, config), ArgumentError);
}

TEST(Experiment, BaseReportCarriesEveryMetric) {
  TempDir dir;
  ExperimentConfig config = small_experiment(dir);
  config.variant = neural::Variant::kBase;
  config.train.epochs = 2;
  const ExperimentResult result = run_experiment(generate_blob_dataset(10, 5, {.side = 16}), config);
  for (const char* key : {"\"accuracy\"", "\"precision\"", "\"recall\"", "\"f1\"", "\"tnr\""}) {
    EXPECT_NE(result.metrics_json.find(key), std::string::npos) << key;
  }
}

// ---- bench ---------------------------------------------------------------

TEST(Bench, OneRowPerSizeWithEveryRun) {
  const std::vector<BenchRow> rows = run_bench({16, 32}, 3, 0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].size, 16u);
  EXPECT_EQ(rows[0].runs.size(), 3u);
  EXPECT_GT(rows[1].mean_ips, 0.0);

  std::ostringstream out;
  print_bench(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::istringstream header(line);
  std::string a, b, c;
  header >> a >> b >> c;
  EXPECT_EQ(a + " " + b + " " + c, "size mean_ips stddev");
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    double size = 0, mean = 0, sd = -1;
    ASSERT_TRUE(fields >> size >> mean >> sd);
    EXPECT_GE(sd, 0.0);
    ++data_rows;
  }
  EXPECT_EQ(data_rows, 2u);
  EXPECT_THROW(run_bench({}, 1, 0), ArgumentError);
  EXPECT_THROW(run_bench({8}, 0, 0), ArgumentError);
}

}  // namespace
}  // namespace topofuse::pipeline
