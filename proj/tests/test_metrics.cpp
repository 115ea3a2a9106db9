#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rebalance/error.hpp"
#include "rebalance/metrics.hpp"

using namespace rebalance;

namespace {

constexpr Label P = Label::positive;
constexpr Label N = Label::negative;

// Mann-Whitney oracle: fraction of (positive, negative) pairs ranked correctly, ties count half.
double pair_auc(const std::vector<Label>& truth, const std::vector<double>& scores) {
  double good = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] != P) continue;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (truth[j] != N) continue;
      pairs += 1;
      good += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
    }
  }
  return good / pairs;
}

}  // namespace

TEST_CASE("confusion counts the four quadrants") {
  const std::vector<Label> truth{P, P, N, N};
  const std::vector<Label> pred{P, N, P, N};
  CHECK(confusion(truth, pred) == ConfusionMatrix{.tp = 1, .fp = 1, .tn = 1, .fn = 1});
  const auto perfect = confusion(truth, truth);
  CHECK(perfect.fp == 0);
  CHECK(perfect.fn == 0);
  const std::vector<Label> t3{P, P, N};
  const std::vector<Label> all_neg{N, N, N};
  CHECK(confusion(t3, all_neg) == ConfusionMatrix{.tp = 0, .fp = 0, .tn = 1, .fn = 2});
}

TEST_CASE("confusion errors") {
  const std::vector<Label> a{P, N};
  const std::vector<Label> b{P};
  CHECK_THROWS_AS(confusion(a, b), ConfigError);
  CHECK_THROWS_AS(confusion(std::vector<Label>{}, std::vector<Label>{}), ConfigError);
}

TEST_CASE("ratio measures on tp=3 fp=1 tn=5 fn=1") {
  const ConfusionMatrix cm{.tp = 3, .fp = 1, .tn = 5, .fn = 1};
  CHECK(accuracy(cm).value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(precision(cm).value == 0.75);
  CHECK(recall(cm).value == 0.75);
  CHECK(f1(cm).value == 0.75);
  // (1 + 3/4 - 1/6) / 2
  CHECK(auc_single_point(cm).value == doctest::Approx(19.0 / 24.0).epsilon(1e-15));
  CHECK(std::abs(auc_single_point(cm).value - 0.7917) < 5e-5);
}

TEST_CASE("perfect and degenerate matrices") {
  const ConfusionMatrix perfect{.tp = 4, .fp = 0, .tn = 6, .fn = 0};
  for (const Score s : {accuracy(perfect), precision(perfect), recall(perfect), f1(perfect), auc_single_point(perfect)}) {
    CHECK(s.value == 1.0);
    CHECK_FALSE(s.degenerate);
  }
  const ConfusionMatrix none_predicted{.tp = 0, .fp = 0, .tn = 5, .fn = 3};
  CHECK(precision(none_predicted).value == 0.0);
  CHECK(precision(none_predicted).degenerate);
  CHECK(f1(none_predicted).value == 0.0);
  CHECK(f1(none_predicted).degenerate);
  CHECK_FALSE(recall(none_predicted).degenerate);
  // chance line: TPR = FPR
  CHECK(auc_single_point({.tp = 2, .fp = 4, .tn = 4, .fn = 2}).value == 0.5);
}

TEST_CASE("accuracy is symmetric in the positive class; precision and recall are not") {
  const ConfusionMatrix cm{.tp = 7, .fp = 2, .tn = 30, .fn = 5};
  const ConfusionMatrix swapped{.tp = cm.tn, .fp = cm.fn, .tn = cm.tp, .fn = cm.fp};
  CHECK(accuracy(cm).value == accuracy(swapped).value);
  CHECK(precision(cm).value != precision(swapped).value);
  CHECK(recall(cm).value != recall(swapped).value);
  CHECK(f1(cm).value != f1(swapped).value);
}

TEST_CASE("measures stay in [0,1] and f1 is bounded by the arithmetic mean") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(0, 30);
  for (int i = 0; i < 1000; ++i) {
    ConfusionMatrix cm{static_cast<std::uint64_t>(c(rng)), static_cast<std::uint64_t>(c(rng)),
                       static_cast<std::uint64_t>(c(rng)), static_cast<std::uint64_t>(c(rng))};
    if (cm.total() == 0) cm.tn = 1;
    for (const Score s : {accuracy(cm), precision(cm), recall(cm), f1(cm), auc_single_point(cm)}) {
      CHECK(s.value >= 0.0);
      CHECK(s.value <= 1.0);
    }
    CHECK(f1(cm).value <= (precision(cm).value + recall(cm).value) / 2 + 1e-15);
  }
}

TEST_CASE("roc examples") {
  const std::vector<Label> truth{P, N, P, N};
  const std::vector<double> scores{0.9, 0.8, 0.7, 0.1};
  const RocCurve c = roc(truth, scores);
  CHECK(c.auc == 0.75);
  REQUIRE(c.points.size() == 5);
  CHECK(c.points.front().fpr == 0.0);
  CHECK(c.points.front().tpr == 0.0);
  CHECK(c.points.back().fpr == 1.0);
  CHECK(c.points.back().tpr == 1.0);

  const std::vector<double> separating{0.9, 0.1, 0.8, 0.2};
  CHECK(roc(truth, separating).auc == 1.0);

  // tied scores form one step: a single diagonal segment
  const std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
  const RocCurve f = roc(truth, flat);
  CHECK(f.points.size() == 2);
  CHECK(f.auc == 0.5);
}

TEST_CASE("roc of label-independent scores is near 0.5") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Label> truth(1000);
  std::vector<double> scores(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    truth[i] = u(rng) < 0.3 ? P : N;
    scores[i] = u(rng);
  }
  CHECK(std::abs(roc(truth, scores).auc - 0.5) <= 0.05);
}

TEST_CASE("roc matches the pair-counting oracle and keeps fpr ordered") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<Label> truth(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = rng() % 3 == 0 ? P : N;
      scores[i] = static_cast<double>(rng() % 20) / 19.0;  // coarse grid forces ties
    }
    truth[0] = P;
    truth[1] = N;
    const RocCurve c = roc(truth, scores);
    CHECK(std::abs(c.auc - pair_auc(truth, scores)) <= 1e-12);
    double trapezoid = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      CHECK(c.points[i - 1].fpr <= c.points[i].fpr);
      trapezoid += (c.points[i].fpr - c.points[i - 1].fpr) * (c.points[i].tpr + c.points[i - 1].tpr) / 2;
    }
    CHECK(std::abs(c.auc - trapezoid) <= 1e-12);
  }
}

TEST_CASE("roc errors and CSV export") {
  const std::vector<Label> one_class{P, P};
  const std::vector<double> s2{0.1, 0.2};
  CHECK_THROWS_AS(roc(one_class, s2), DataError);
  const std::vector<Label> t{P, N};
  const std::vector<double> s1{0.1};
  CHECK_THROWS_AS(roc(t, s1), ConfigError);
  const std::vector<double> bad{0.1, NAN};
  CHECK_THROWS_AS(roc(t, bad), ConfigError);

  std::ostringstream out;
  const std::vector<double> s{0.9, 0.1};
  write_roc_csv(roc(t, s), out);
  CHECK(out.str() == "fpr,tpr\n0,0\n0,1\n1,1\n");
}
