#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rebalance/dataset.hpp"
#include "rebalance/rng.hpp"
#include "rebalance/smote.hpp"

namespace rebalance {

struct AdasynEntry {
  std::size_t row = 0;                 // dataset row of the minority point
  std::size_t majority_neighbors = 0;  // f_k
  double ratio = 0.0;                  // r_i = f_k / k
  double weight = 0.0;                 // r_hat_i = r_i / sum r
  std::size_t count = 0;               // g_i
};

// Per-minority generation counts.
//
// `total` is G = round(beta * (n - m)). Counts are apportioned by largest
// remainder over the exact quotas f_i * G / sum(f), so they always sum to G.
// When no minority point has a majority neighbour the weights fall back to
// 1/m and `uniform_fallback` is set.
struct AdasynPlan {
  double beta = 1.0;
  std::size_t k = 5;
  std::size_t density_k = 5;     // k used for f_k, after clipping to rows - 1
  std::size_t generation_k = 5;  // k used for neighbour choice, after clipping to m - 1
  std::size_t total = 0;
  bool uniform_fallback = false;
  std::vector<AdasynEntry> entries;
};

AdasynPlan adasyn_plan(const Dataset& ds, double beta, std::size_t k);

// Integer apportionment of `total` proportional to `weights` (largest
// remainder, ties to the lower position). All-zero weights apportion evenly.
std::vector<std::size_t> largest_remainder(std::span<const std::size_t> weights, std::size_t total);

struct AdasynConfig {
  double beta = 1.0;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::optional<double> delta_override;
};

/// Generates g_i samples for each minority point in row order. Each sample
/// draws a slot among the point's k minority-class nearest neighbours, then
/// delta in [0, 1) unless delta_override is set.
std::vector<SyntheticSample> adasyn(const Dataset& ds, const AdasynConfig& cfg);
std::vector<SyntheticSample> adasyn(const Dataset& ds, const AdasynConfig& cfg, DrawSource& draws);

}  // namespace rebalance
