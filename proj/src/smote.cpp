#include "rebalance/smote.hpp"

#include <cmath>
#include <string>

#include "rebalance/error.hpp"
#include "rebalance/neighbors.hpp"

namespace rebalance {

namespace detail {

std::size_t clip_generation_k(std::size_t k, std::size_t minority, const char* method) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (minority < 2) {
    throw DataError(std::string(method) + " needs at least 2 minority rows, found " +
                    std::to_string(minority));
  }
  if (k >= minority) {
    warn(std::string(method) + ": k = " + std::to_string(k) + " clipped to " +
         std::to_string(minority - 1) + " (minority class has " + std::to_string(minority) + " rows)");
    return minority - 1;
  }
  return k;
}

void check_delta_override(const std::optional<double>& delta) {
  if (delta && !(*delta >= 0.0 && *delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
}

}  // namespace detail

SyntheticSample interpolate(const Dataset& ds, std::size_t base, std::size_t neighbor, double delta) {
  const auto x = ds.row(base);
  const auto y = ds.row(neighbor);
  SyntheticSample s{std::vector<double>(x.size()), base, neighbor, delta};
  // std::lerp keeps every coordinate inside [x, y] under rounding.
  for (std::size_t c = 0; c < x.size(); ++c) s.features[c] = std::lerp(x[c], y[c], delta);
  return s;
}

std::vector<SyntheticSample> smote(const Dataset& ds, const SmoteConfig& cfg) {
  SeededDraws draws(cfg.seed);
  return smote(ds, cfg, draws);
}

std::vector<SyntheticSample> smote(const Dataset& ds, const SmoteConfig& cfg, DrawSource& draws) {
  if (cfg.n_synthetic < 0) throw ConfigError("number of synthetic samples must be non-negative");
  detail::check_delta_override(cfg.delta_override);
  const Partition parts = partition(ds);
  const std::size_t k = detail::clip_generation_k(cfg.k, parts.minority.size(), "smote");
  const auto neighbors = minority_neighbors(ds, parts.minority, k);

  std::vector<SyntheticSample> out;
  out.reserve(static_cast<std::size_t>(cfg.n_synthetic));
  for (std::int64_t i = 0; i < cfg.n_synthetic; ++i) {
    const std::size_t pick = draws.index(parts.minority.size());
    const std::size_t slot = draws.index(k);
    const double delta = cfg.delta_override ? *cfg.delta_override : draws.unit();
    out.push_back(interpolate(ds, parts.minority[pick], neighbors[pick].entries[slot].index, delta));
  }
  return out;
}

std::int64_t balance_count(const Dataset& ds) {
  return static_cast<std::int64_t>(ds.majority_count()) - static_cast<std::int64_t>(ds.minority_count());
}

Dataset append_synthetic(const Dataset& ds, std::span<const SyntheticSample> samples) {
  std::vector<double> values = ds.values();
  std::vector<Label> labels = ds.labels();
  values.reserve(values.size() + samples.size() * ds.cols());
  for (const auto& s : samples) {
    if (s.features.size() != ds.cols()) throw ConfigError("synthetic sample dimension mismatch");
    values.insert(values.end(), s.features.begin(), s.features.end());
    labels.push_back(Label::positive);
  }
  return ds.with_rows(std::move(values), std::move(labels));
}

}  // namespace rebalance
