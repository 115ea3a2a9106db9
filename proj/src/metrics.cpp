#include "rebalance/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include "rebalance/error.hpp"

namespace rebalance {
namespace {

Score ratio(double num, double den) {
  if (den == 0.0) return {0.0, true};
  return {num / den, false};
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) throw ConfigError("truth and prediction lengths differ");
  if (truth.empty()) throw ConfigError("confusion matrix of an empty label list");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == Label::positive;
    const bool guess = predicted[i] == Label::positive;
    if (actual && guess) ++cm.tp;
    else if (!actual && guess) ++cm.fp;
    else if (!actual) ++cm.tn;
    else ++cm.fn;
  }
  return cm;
}

Score accuracy(const ConfusionMatrix& cm) {
  return ratio(static_cast<double>(cm.tp + cm.tn), static_cast<double>(cm.total()));
}

Score precision(const ConfusionMatrix& cm) {
  return ratio(static_cast<double>(cm.tp), static_cast<double>(cm.tp + cm.fp));
}

Score recall(const ConfusionMatrix& cm) {
  return ratio(static_cast<double>(cm.tp), static_cast<double>(cm.tp + cm.fn));
}

Score f1(const ConfusionMatrix& cm) {
  const Score p = precision(cm);
  const Score r = recall(cm);
  Score out = ratio(2.0 * (r.value * p.value), r.value + p.value);
  out.degenerate = out.degenerate || p.degenerate || r.degenerate;
  return out;
}

Score auc_single_point(const ConfusionMatrix& cm) {
  const Score tpr = recall(cm);
  const Score fpr = ratio(static_cast<double>(cm.fp), static_cast<double>(cm.fp + cm.tn));
  return {(1.0 + tpr.value - fpr.value) / 2.0, tpr.degenerate || fpr.degenerate};
}

RocCurve roc(std::span<const Label> truth, std::span<const double> scores) {
  if (truth.size() != scores.size()) throw ConfigError("truth and score lengths differ");
  for (double s : scores) {
    if (!std::isfinite(s)) throw ConfigError("ROC scores must be finite");
  }
  const auto pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), Label::positive));
  const std::size_t neg = truth.size() - pos;
  if (pos == 0 || neg == 0) throw DataError("ROC/AUC is undefined when only one class is present");

  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      (truth[order[i]] == Label::positive ? tp : fp) += 1;
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos)});
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

void write_roc_csv(const RocCurve& curve, std::ostream& out) {
  out << "fpr,tpr\n";
  for (const auto& p : curve.points) out << format_number(p.fpr) << ',' << format_number(p.tpr) << '\n';
}

void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_roc_csv(curve, out);
}

}  // namespace rebalance
