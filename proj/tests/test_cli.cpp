#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "support/run_cli.hpp"
#include "support/temp_dir.hpp"

namespace topofuse {
namespace {

using testing::TempDir;
using testing::read_bytes;
using testing::run_cli;

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

void expect_clean_failure(const testing::CliResult& r, int code) {
  EXPECT_EQ(r.exit_code, code) << r.err;
  EXPECT_EQ(count_lines(r.err), 1u) << r.err;
}

TEST(CliExtract, SyntheticCsvShape) {
  TempDir dir;
  const auto r = run_cli(dir.path(), "extract --synthetic 10 --seed 1 --curve-len 100 --out f.csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  const std::string csv = read_bytes(dir / "f.csv");
  EXPECT_EQ(count_lines(csv), 21u);
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 101);
}

TEST(CliExtract, RerunIsByteIdentical) {
  TempDir dir;
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 5 --seed 4 --out a.csv").exit_code, 0);
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 5 --seed 4 --out b.csv --workers 3").exit_code, 0);
  EXPECT_EQ(read_bytes(dir / "a.csv"), read_bytes(dir / "b.csv"));
}

TEST(CliExtract, UnitRangeMatchesGlobalOnMinmaxImages) {
  TempDir dir;
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 6 --seed 2 --minmax --range 0:1 --out fixed.csv").exit_code, 0);
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 6 --seed 2 --minmax --range global --out global.csv").exit_code,
            0);
  EXPECT_EQ(read_bytes(dir / "fixed.csv"), read_bytes(dir / "global.csv"));
}

TEST(CliExtract, EmitsDiagramsAndUsesCache) {
  TempDir dir;
  auto r = run_cli(dir.path(), "extract --synthetic 2 --out a.csv --emit-diagrams pd --cache-dir cache");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "pd/negative/blob_0001.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "pd/positive/blob_0000.csv"));
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir / "cache"), {}), 4);
  r = run_cli(dir.path(), "extract --synthetic 2 --out b.csv --cache-dir cache");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(read_bytes(dir / "a.csv"), read_bytes(dir / "b.csv"));
}

TEST(CliExtract, BadInputsExitTwo) {
  TempDir dir;
  expect_clean_failure(run_cli(dir.path(), "extract --data missing_dir --out f.csv"), 2);
  expect_clean_failure(run_cli(dir.path(), "extract --synthetic 2 --range 0:x --out f.csv"), 2);
  expect_clean_failure(run_cli(dir.path(), "extract --synthetic 2 --curve-len 0 --out f.csv"), 2);
  expect_clean_failure(run_cli(dir.path(), "extract --synthetic 2 --min-persistence -1 --out f.csv"), 2);
  expect_clean_failure(run_cli(dir.path(), "extract --synthetic 2"), 2);
  expect_clean_failure(run_cli(dir.path(), "extract --out f.csv"), 2);
  expect_clean_failure(run_cli(dir.path(), "frobnicate"), 2);
}

TEST(CliTrain, VariantInputRequirements) {
  TempDir dir;
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 5 --out f.csv").exit_code, 0);
  auto r = run_cli(dir.path(), "train --variant base --features f.csv --out m.bin");
  expect_clean_failure(r, 2);
  EXPECT_NE(r.err.find("images"), std::string::npos);
  r = run_cli(dir.path(), "train --variant tda12 --features f.csv --out m.bin");
  expect_clean_failure(r, 2);
  r = run_cli(dir.path(), "train --variant tda1 --out m.bin");
  expect_clean_failure(r, 2);
  EXPECT_NE(r.err.find("features"), std::string::npos);
  expect_clean_failure(run_cli(dir.path(), "train --variant tda9 --features f.csv --out m.bin"), 2);
  expect_clean_failure(run_cli(dir.path(), "train --variant tda1 --features f.csv --lr -1 --out m.bin"), 2);
  EXPECT_FALSE(std::filesystem::exists(dir / "m.bin"));
}

TEST(CliTrainEval, EvalReproducesTrainMetrics) {
  TempDir dir;
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 15 --seed 3 --curve-len 50 --out f.csv").exit_code, 0);
  const auto trained =
      run_cli(dir.path(), "train --variant tda1 --features f.csv --seed 7 --epochs 10 --out m.bin --metrics m.json");
  ASSERT_EQ(trained.exit_code, 0) << trained.err;
  EXPECT_TRUE(trained.err.empty());
  EXPECT_EQ(trained.out, read_bytes(dir / "m.json"));
  EXPECT_NE(trained.out.find("\"accuracy\""), std::string::npos);

  const auto evaluated =
      run_cli(dir.path(), "eval --model m.bin --features f.csv --holdout 0.2 --seed 7 --out e.json");
  ASSERT_EQ(evaluated.exit_code, 0) << evaluated.err;
  EXPECT_EQ(evaluated.out, trained.out);
  EXPECT_EQ(read_bytes(dir / "e.json"), trained.out);
}

TEST(CliTrain, DoublePrecisionRerunIsByteIdentical) {
  TempDir dir;
  const std::string flags = "train --variant tda12 --synthetic 6 --side 16 --seed 5 --epochs 3 --precision double";
  ASSERT_EQ(run_cli(dir.path(), flags + " --out a.bin").exit_code, 0);
  ASSERT_EQ(run_cli(dir.path(), flags + " --out b.bin").exit_code, 0);
  EXPECT_EQ(read_bytes(dir / "a.bin"), read_bytes(dir / "b.bin"));
  EXPECT_EQ(read_bytes(dir / "a.json"), read_bytes(dir / "b.json"));
}

TEST(CliEval, ModelAndInputErrors) {
  TempDir dir;
  ASSERT_EQ(run_cli(dir.path(), "extract --synthetic 5 --out f.csv").exit_code, 0);
  ASSERT_EQ(run_cli(dir.path(), "train --variant tda1 --features f.csv --epochs 1 --out m.bin").exit_code, 0);

  const std::string model = read_bytes(dir / "m.bin");
  std::ofstream(dir / "short.bin", std::ios::binary) << model.substr(0, model.size() / 2);
  auto r = run_cli(dir.path(), "eval --model short.bin --features f.csv");
  expect_clean_failure(r, 3);
  EXPECT_NE(r.err.find("incompatible model file"), std::string::npos);

  std::ofstream(dir / "magic.bin", std::ios::binary) << "XXXX" << model.substr(4);
  expect_clean_failure(run_cli(dir.path(), "eval --model magic.bin --features f.csv"), 3);

  std::filesystem::create_directories(dir / "empty/positive");
  std::filesystem::create_directories(dir / "empty/negative");
  expect_clean_failure(run_cli(dir.path(), "eval --model m.bin --data empty"), 2);
  expect_clean_failure(run_cli(dir.path(), "eval --model absent.bin --features f.csv"), 2);
}

TEST(CliGenerate, WritesLoadableFolder) {
  TempDir dir;
  auto r = run_cli(dir.path(), "generate --count 3 --side 32 --seed 1 --out data");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "data/positive/blob_0002.png"));
  r = run_cli(dir.path(), "extract --data data --side 32 --curve-len 10 --out f.csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = read_bytes(dir / "f.csv");
  EXPECT_EQ(count_lines(csv), 7u);
  EXPECT_NE(csv.find("\nnegative/blob_0000,0,"), std::string::npos);
}

TEST(CliBench, AlignedTable) {
  TempDir dir;
  const auto r = run_cli(dir.path(), "bench --sizes 16,32 --reps 3");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::size_t> widths;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    widths.push_back(line.size());
    ++rows;
  }
  EXPECT_EQ(rows, 3u);
  EXPECT_TRUE(std::all_of(widths.begin(), widths.end(), [&](std::size_t w) { return w == widths.front(); }));
  expect_clean_failure(run_cli(dir.path(), "bench --sizes 0"), 2);
}

TEST(CliConfig, FileOverlayWithFlagPrecedence) {
  TempDir dir;
  std::ofstream(dir / "run.ini") << "[extract]\nsynthetic=2\ncurve-len=7\nout=c.csv\n";
  ASSERT_EQ(run_cli(dir.path(), "--config run.ini extract").exit_code, 0);
  std::string csv = read_bytes(dir / "c.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,label,b0,b1,b2,b3,b4,b5,b6");
  ASSERT_EQ(run_cli(dir.path(), "--config run.ini extract --curve-len 3").exit_code, 0);
  csv = read_bytes(dir / "c.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,label,b0,b1,b2");
  expect_clean_failure(run_cli(dir.path(), "--config nowhere.ini extract"), 2);
}

TEST(CliHelp, EverySubcommandHasHelp) {
  TempDir dir;
  for (const char* cmd : {"generate", "extract", "train", "eval", "bench"}) {
    const auto r = run_cli(dir.path(), std::string(cmd) + " --help");
    EXPECT_EQ(r.exit_code, 0) << cmd;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << cmd;
  }
}

}  // namespace
}  // namespace topofuse
