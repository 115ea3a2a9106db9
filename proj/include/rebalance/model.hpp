#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rebalance/dataset.hpp"

namespace rebalance {

struct TrainingConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 1000;
  std::uint64_t seed = 0;  // recorded only; weights start at zero
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<std::string> column_names;
  TrainingConfig config;
  std::vector<double> loss_history;  // mean log-loss before each epoch, then after the last
};

struct LossGradient {
  std::vector<double> weights;
  double bias = 0.0;
};

double sigmoid(double z);

// Mean negative log-likelihood of positive-vs-negative labels.
double log_loss(std::span<const double> weights, double bias, const Dataset& ds);
LossGradient log_loss_gradient(std::span<const double> weights, double bias, const Dataset& ds);

/// Full-batch gradient descent on the mean log-loss from zero weights, with
/// no regularisation. Throws DataError on single-class data.
LogisticModel train_logistic(const Dataset& ds, const TrainingConfig& config = {});

/// sigmoid(w.x + b) per row. Throws ConfigError on a feature-count mismatch.
std::vector<double> predict_scores(const LogisticModel& model, const Dataset& ds);
std::vector<Label> predict_labels(const LogisticModel& model, const Dataset& ds, double threshold = 0.5);

// Tab-separated text; see save_model in model.cpp for the layout.
void save_model(const LogisticModel& model, std::ostream& out);
LogisticModel load_model(std::istream& in);

}  // namespace rebalance
