#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "rebalance/dataset.hpp"

namespace rebalance {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// A ratio measure. A zero denominator yields value 0 with `degenerate` set.
struct Score {
  double value = 0.0;
  bool degenerate = false;
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);

Score accuracy(const ConfusionMatrix& cm);
Score precision(const ConfusionMatrix& cm);
Score recall(const ConfusionMatrix& cm);
Score f1(const ConfusionMatrix& cm);

// (1 + TPR - FPR) / 2: the area under the two-segment ROC curve through the
// single operating point of `cm`.
Score auc_single_point(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

/// One point per distinct score, swept from the highest score down; tied
/// scores move as one step. Throws DataError when truth holds a single class
/// and ConfigError on length mismatch or a non-finite score.
RocCurve roc(std::span<const Label> truth, std::span<const double> scores);

// Two-column "fpr,tpr" CSV.
void write_roc_csv(const RocCurve& curve, std::ostream& out);
void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path);

}  // namespace rebalance
