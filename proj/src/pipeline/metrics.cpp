#include "topofuse/pipeline/metrics.hpp"

#include <json.hpp>

#include "topofuse/errors.hpp"

namespace topofuse::pipeline {

namespace {

double ratio(std::size_t num, std::size_t den, const char* flag, std::vector<std::string>& flags) {
  if (den == 0) {
    flags.emplace_back(flag);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport evaluate_metrics(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) throw ArgumentError("predictions and labels differ in length");
  if (labels.empty()) throw ArgumentError("cannot evaluate an empty prediction set");

  EvalReport report;
  Confusion& m = report.confusion;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int p = predictions[i];
    const int y = labels[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) throw ArgumentError("predictions and labels must be 0 or 1");
    if (y == 1) {
      (p == 1 ? m.tp : m.fn)++;
    } else {
      (p == 1 ? m.fp : m.tn)++;
    }
  }

  report.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
  report.precision = ratio(m.tp, m.tp + m.fp, "precision_undefined", report.flags);
  report.recall = ratio(m.tp, m.tp + m.fn, "recall_undefined", report.flags);
  report.tnr = ratio(m.tn, m.tn + m.fp, "tnr_undefined", report.flags);
  const double pr = report.precision + report.recall;
  if (pr > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall / pr;
  } else {
    report.flags.emplace_back("f1_undefined");
  }
  return report;
}

std::string metrics_json(const EvalReport& report, const std::string& variant, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["variant"] = variant;
  j["seed"] = seed;
  j["accuracy"] = report.accuracy;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["tnr"] = report.tnr;
  j["confusion"] = {{"tn", report.confusion.tn},
                    {"fp", report.confusion.fp},
                    {"fn", report.confusion.fn},
                    {"tp", report.confusion.tp}};
  j["flags"] = report.flags;
  return j.dump(2) + "\n";
}

}  // namespace topofuse::pipeline
