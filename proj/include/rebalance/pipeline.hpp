#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rebalance/dataset.hpp"
#include "rebalance/metrics.hpp"
#include "rebalance/model.hpp"
#include "rebalance/smote.hpp"

namespace rebalance {

enum class Method { none, smote, adasyn };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);  // throws ConfigError

struct ResampleOptions {
  Method method = Method::smote;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> n;  // smote count; default balances the classes
  double beta = 1.0;              // adasyn balance level
  std::optional<double> delta;
};

struct Resampled {
  Dataset data;  // input rows, then synthetic rows
  std::vector<SyntheticSample> synthetic;
};

Resampled resample(const Dataset& ds, const ResampleOptions& options);

struct EvaluateOptions {
  ResampleOptions resampling{.method = Method::none};
  double train_fraction = 0.8;
  TrainingConfig training;
  double threshold = 0.5;
};

struct ClassCounts {
  std::size_t minority = 0;
  std::size_t majority = 0;
};

struct RunReport {
  Method method = Method::none;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  ClassCounts train_before;
  ClassCounts train_after;
  ClassCounts test;
  std::size_t generated = 0;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc_roc = 0.0;
  double auc_single_point = 0.0;
  RocCurve roc;
  LogisticModel model;
  std::vector<std::size_t> test_rows;  // source rows of the untouched test partition
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// split -> standardize (fit on train) -> resample train only -> train ->
/// score the untouched test partition.
RunReport evaluate(const Dataset& ds, const EvaluateOptions& options);

nlohmann::ordered_json to_json(const RunReport& report);

}  // namespace rebalance
