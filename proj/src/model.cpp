#include "rebalance/model.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "rebalance/error.hpp"

namespace rebalance {
namespace {

constexpr const char* kModelMagic = "rebalance-logistic-model\t1";

double margin(std::span<const double> weights, double bias, std::span<const double> x) {
  double z = bias;
  for (std::size_t c = 0; c < x.size(); ++c) z += weights[c] * x[c];
  return z;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_dims(std::span<const double> weights, const Dataset& ds) {
  if (weights.size() != ds.cols()) {
    throw ConfigError("model has " + std::to_string(weights.size()) + " weights but data has " +
                      std::to_string(ds.cols()) + " features");
  }
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("malformed number '" + text + "' in model file");
  }
  return v;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_loss(std::span<const double> weights, double bias, const Dataset& ds) {
  check_dims(weights, ds);
  if (ds.rows() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const double z = margin(weights, bias, ds.row(r));
    // -log(sigmoid(z)) = softplus(-z); -log(1 - sigmoid(z)) = softplus(z)
    sum += ds.labels()[r] == Label::positive ? softplus(-z) : softplus(z);
  }
  return sum / static_cast<double>(ds.rows());
}

LossGradient log_loss_gradient(std::span<const double> weights, double bias, const Dataset& ds) {
  check_dims(weights, ds);
  LossGradient g{std::vector<double>(ds.cols(), 0.0), 0.0};
  if (ds.rows() == 0) return g;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const auto x = ds.row(r);
    const double y = ds.labels()[r] == Label::positive ? 1.0 : 0.0;
    const double err = sigmoid(margin(weights, bias, x)) - y;
    for (std::size_t c = 0; c < x.size(); ++c) g.weights[c] += err * x[c];
    g.bias += err;
  }
  const double inv = 1.0 / static_cast<double>(ds.rows());
  for (auto& w : g.weights) w *= inv;
  g.bias *= inv;
  return g;
}

LogisticModel train_logistic(const Dataset& ds, const TrainingConfig& config) {
  if (ds.minority_count() == 0 || ds.majority_count() == 0) {
    throw DataError("logistic regression needs both classes in the training data");
  }
  if (!(config.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  LogisticModel model;
  model.weights.assign(ds.cols(), 0.0);
  model.column_names = ds.column_names();
  model.config = config;
  model.loss_history.reserve(config.epochs + 1);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    model.loss_history.push_back(log_loss(model.weights, model.bias, ds));
    const auto g = log_loss_gradient(model.weights, model.bias, ds);
    for (std::size_t c = 0; c < model.weights.size(); ++c) model.weights[c] -= config.learning_rate * g.weights[c];
    model.bias -= config.learning_rate * g.bias;
  }
  model.loss_history.push_back(log_loss(model.weights, model.bias, ds));
  return model;
}

std::vector<double> predict_scores(const LogisticModel& model, const Dataset& ds) {
  check_dims(model.weights, ds);
  std::vector<double> scores(ds.rows());
  for (std::size_t r = 0; r < ds.rows(); ++r) scores[r] = sigmoid(margin(model.weights, model.bias, ds.row(r)));
  return scores;
}

std::vector<Label> predict_labels(const LogisticModel& model, const Dataset& ds, double threshold) {
  const auto scores = predict_scores(model, ds);
  std::vector<Label> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    labels[i] = scores[i] >= threshold ? Label::positive : Label::negative;
  }
  return labels;
}

// Layout, one record per line, fields separated by tabs:
//   rebalance-logistic-model  1
//   learning_rate  <real>
//   epochs         <integer>
//   seed           <integer>
//   bias           <real>
//   weight         <column name>  <real>     (one line per feature, in order)
void save_model(const LogisticModel& model, std::ostream& out) {
  out << kModelMagic << '\n';
  out << "learning_rate\t" << format_number(model.config.learning_rate) << '\n';
  out << "epochs\t" << model.config.epochs << '\n';
  out << "seed\t" << model.config.seed << '\n';
  out << "bias\t" << format_number(model.bias) << '\n';
  for (std::size_t c = 0; c < model.weights.size(); ++c) {
    const std::string name = c < model.column_names.size() ? model.column_names[c] : "x" + std::to_string(c);
    out << "weight\t" << name << '\t' << format_number(model.weights[c]) << '\n';
  }
}

LogisticModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic) throw DataError("not a rebalance model file");
  LogisticModel model;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '\t');) fields.push_back(f);
    const std::string& key = fields.front();
    if (key == "weight" && fields.size() == 3) {
      model.column_names.push_back(fields[1]);
      model.weights.push_back(parse_double(fields[2]));
    } else if (fields.size() != 2) {
      throw DataError("malformed model line '" + line + "'");
    } else if (key == "learning_rate") {
      model.config.learning_rate = parse_double(fields[1]);
    } else if (key == "epochs") {
      model.config.epochs = std::stoull(fields[1]);
    } else if (key == "seed") {
      model.config.seed = std::stoull(fields[1]);
    } else if (key == "bias") {
      model.bias = parse_double(fields[1]);
    } else {
      throw DataError("unknown model field '" + key + "'");
    }
  }
  return model;
}

}  // namespace rebalance
