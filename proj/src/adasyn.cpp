#include "rebalance/adasyn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rebalance/error.hpp"
#include "rebalance/neighbors.hpp"

namespace rebalance {

std::vector<std::size_t> largest_remainder(std::span<const std::size_t> weights, std::size_t total) {
  const std::size_t n = weights.size();
  if (n == 0) {
    if (total != 0) throw ConfigError("cannot apportion a positive total over zero entries");
    return {};
  }
  std::vector<std::size_t> uniform;
  std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
  if (sum == 0) {
    uniform.assign(n, 1);
    weights = uniform;
    sum = n;
  }
  std::vector<std::size_t> counts(n);
  std::vector<std::size_t> remainders(n);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto product = static_cast<unsigned __int128>(weights[i]) * total;
    counts[i] = static_cast<std::size_t>(product / sum);
    remainders[i] = static_cast<std::size_t>(product % sum);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++counts[order[i]];
  return counts;
}

AdasynPlan adasyn_plan(const Dataset& ds, double beta, std::size_t k) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in (0, 1]");
  if (k == 0) throw ConfigError("k must be at least 1");
  const Partition parts = partition(ds);
  const std::size_t m = parts.minority.size();
  const std::size_t n = parts.majority.size();
  if (n <= m) {
    throw DataError("adasyn needs more majority rows than minority rows (majority " + std::to_string(n) +
                    ", minority " + std::to_string(m) + ")");
  }

  AdasynPlan plan;
  plan.beta = beta;
  plan.k = k;
  plan.generation_k = detail::clip_generation_k(k, m, "adasyn");
  plan.density_k = k;
  if (k >= ds.rows()) {
    plan.density_k = ds.rows() - 1;
    warn("adasyn: density k = " + std::to_string(k) + " clipped to " + std::to_string(plan.density_k));
  }
  plan.total = static_cast<std::size_t>(std::llround(beta * static_cast<double>(n - m)));

  std::vector<std::size_t> fk(m);
  for (std::size_t i = 0; i < m; ++i) fk[i] = majority_count(ds, parts.minority[i], plan.density_k);
  const std::size_t fk_sum = std::accumulate(fk.begin(), fk.end(), std::size_t{0});
  plan.uniform_fallback = fk_sum == 0;
  if (plan.uniform_fallback) {
    warn("adasyn: no minority point has a majority neighbour; using uniform weights");
  }

  const auto counts = largest_remainder(fk, plan.total);
  double ratio_sum = 0.0;
  plan.entries.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& e = plan.entries[i];
    e.row = parts.minority[i];
    e.majority_neighbors = fk[i];
    e.ratio = static_cast<double>(fk[i]) / static_cast<double>(plan.density_k);
    e.count = counts[i];
    ratio_sum += e.ratio;
  }
  for (auto& e : plan.entries) {
    e.weight = plan.uniform_fallback ? 1.0 / static_cast<double>(m) : e.ratio / ratio_sum;
  }
  return plan;
}

std::vector<SyntheticSample> adasyn(const Dataset& ds, const AdasynConfig& cfg) {
  SeededDraws draws(cfg.seed);
  return adasyn(ds, cfg, draws);
}

std::vector<SyntheticSample> adasyn(const Dataset& ds, const AdasynConfig& cfg, DrawSource& draws) {
  detail::check_delta_override(cfg.delta_override);
  const AdasynPlan plan = adasyn_plan(ds, cfg.beta, cfg.k);
  const Partition parts = partition(ds);
  const auto neighbors = minority_neighbors(ds, parts.minority, plan.generation_k);

  std::vector<SyntheticSample> out;
  out.reserve(plan.total);
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    for (std::size_t j = 0; j < plan.entries[i].count; ++j) {
      const std::size_t slot = draws.index(plan.generation_k);
      const double delta = cfg.delta_override ? *cfg.delta_override : draws.unit();
      out.push_back(interpolate(ds, parts.minority[i], neighbors[i].entries[slot].index, delta));
    }
  }
  return out;
}

}  // namespace rebalance
