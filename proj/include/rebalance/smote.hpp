#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rebalance/dataset.hpp"
#include "rebalance/rng.hpp"

namespace rebalance {

// One interpolated minority sample: base + delta * (neighbor - base).
struct SyntheticSample {
  std::vector<double> features;
  std::size_t base_index = 0;      // dataset row of the base point
  std::size_t neighbor_index = 0;  // dataset row of the chosen neighbour
  double delta = 0.0;
};

SyntheticSample interpolate(const Dataset& ds, std::size_t base, std::size_t neighbor, double delta);

struct SmoteConfig {
  std::int64_t n_synthetic = 0;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::optional<double> delta_override;  // replaces every delta draw; must lie in [0, 1]
};

/// Generates cfg.n_synthetic samples. Each sample draws, in this order, a
/// minority base row (index over the minority rows), a slot among the base's
/// k minority-class nearest neighbours, and delta in [0, 1); the delta draw
/// is skipped when delta_override is set. k is clipped to m - 1 with a
/// warning. Throws DataError when the minority class has fewer than two rows
/// and ConfigError for a negative count, k = 0 or an out-of-range override.
std::vector<SyntheticSample> smote(const Dataset& ds, const SmoteConfig& cfg);
std::vector<SyntheticSample> smote(const Dataset& ds, const SmoteConfig& cfg, DrawSource& draws);

// Majority count minus minority count.
std::int64_t balance_count(const Dataset& ds);

// Input rows followed by the synthetic rows, labelled positive.
Dataset append_synthetic(const Dataset& ds, std::span<const SyntheticSample> samples);

namespace detail {
std::size_t clip_generation_k(std::size_t k, std::size_t minority, const char* method);
void check_delta_override(const std::optional<double>& delta);
}  // namespace detail

}  // namespace rebalance
