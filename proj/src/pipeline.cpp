#include "rebalance/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "rebalance/adasyn.hpp"
#include "rebalance/error.hpp"

namespace rebalance {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

  void lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.emplace_back(std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::smote: return "smote";
    case Method::adasyn: return "adasyn";
  }
  return "none";
}

Method parse_method(std::string_view name) {
  if (name == "none") return Method::none;
  if (name == "smote") return Method::smote;
  if (name == "adasyn") return Method::adasyn;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected none, smote or adasyn)");
}

Resampled resample(const Dataset& ds, const ResampleOptions& options) {
  Resampled out;
  switch (options.method) {
    case Method::none:
      break;
    case Method::smote: {
      SmoteConfig cfg;
      cfg.n_synthetic = options.n ? *options.n : std::max<std::int64_t>(0, balance_count(ds));
      cfg.k = options.k;
      cfg.seed = options.seed;
      cfg.delta_override = options.delta;
      if (cfg.n_synthetic > 0) out.synthetic = smote(ds, cfg);
      else if (cfg.n_synthetic < 0) throw ConfigError("number of synthetic samples must be non-negative");
      break;
    }
    case Method::adasyn: {
      AdasynConfig cfg;
      cfg.beta = options.beta;
      cfg.k = options.k;
      cfg.seed = options.seed;
      cfg.delta_override = options.delta;
      out.synthetic = adasyn(ds, cfg);
      break;
    }
  }
  out.data = append_synthetic(ds, out.synthetic);
  return out;
}

RunReport evaluate(const Dataset& ds, const EvaluateOptions& options) {
  RunReport report;
  report.method = options.resampling.method;
  report.seed = options.resampling.seed;
  report.train_fraction = options.train_fraction;
  StageClock clock(report.timings_ms);

  const SplitPair split = stratified_split(ds, options.train_fraction, options.resampling.seed);
  report.test_rows = split.test_rows;
  clock.lap("split");

  const Standardizer scaler = Standardizer::fit(split.train);
  const Dataset train = scaler.apply(split.train);
  const Dataset test = scaler.apply(split.test);
  clock.lap("standardize");

  const Resampled balanced = resample(train, options.resampling);
  report.generated = balanced.synthetic.size();
  clock.lap("resample");

  report.model = train_logistic(balanced.data, options.training);
  clock.lap("train");

  const auto scores = predict_scores(report.model, test);
  std::vector<Label> predicted(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    predicted[i] = scores[i] >= options.threshold ? Label::positive : Label::negative;
  }
  report.confusion = confusion(test.labels(), predicted);
  report.accuracy = accuracy(report.confusion).value;
  report.precision = precision(report.confusion).value;
  report.recall = recall(report.confusion).value;
  report.f1 = f1(report.confusion).value;
  report.auc_single_point = auc_single_point(report.confusion).value;
  report.roc = roc(test.labels(), scores);
  report.auc_roc = report.roc.auc;
  clock.lap("evaluate");

  report.train_before = {train.minority_count(), train.majority_count()};
  report.train_after = {balanced.data.minority_count(), balanced.data.majority_count()};
  report.test = {test.minority_count(), test.majority_count()};
  return report;
}

nlohmann::ordered_json to_json(const RunReport& report) {
  using nlohmann::ordered_json;
  auto counts = [](const ClassCounts& c) {
    return ordered_json{{"minority", c.minority}, {"majority", c.majority}};
  };
  ordered_json timings = ordered_json::object();
  for (const auto& [stage, ms] : report.timings_ms) timings[stage] = ms;
  return ordered_json{
      {"method", to_string(report.method)},
      {"seed", report.seed},
      {"train_fraction", report.train_fraction},
      {"counts",
       {{"train_before", counts(report.train_before)},
        {"generated", report.generated},
        {"train_after", counts(report.train_after)},
        {"test", counts(report.test)}}},
      {"confusion",
       {{"tp", report.confusion.tp},
        {"fp", report.confusion.fp},
        {"tn", report.confusion.tn},
        {"fn", report.confusion.fn}}},
      {"metrics",
       {{"accuracy", report.accuracy},
        {"precision", report.precision},
        {"recall", report.recall},
        {"f1", report.f1},
        {"auc_roc", report.auc_roc},
        {"auc_single_point", report.auc_single_point}}},
      {"timings_ms", timings},
  };
}

}  // namespace rebalance
