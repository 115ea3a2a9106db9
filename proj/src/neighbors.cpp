#include "rebalance/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rebalance/error.hpp"

namespace rebalance {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

struct Candidate {
  double d2;
  int priority;
  std::size_t index;
};

}  // namespace

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("distance between points of different dimension");
  return std::sqrt(squared_distance(a, b));
}

NeighborList knn(PointView points, std::span<const double> query, std::size_t k,
                 const KnnQuery& options) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (query.size() != points.dims) throw ConfigError("query dimension does not match the point set");
  if (!options.tie_priority.empty() && options.tie_priority.size() != points.size()) {
    throw ConfigError("tie priority table must have one entry per point");
  }

  std::vector<Candidate> pool;
  auto consider = [&](std::size_t i) {
    if (options.exclude && *options.exclude == i) return;
    const int prio = options.tie_priority.empty() ? 0 : options.tie_priority[i];
    pool.push_back({squared_distance(points[i], query), prio, i});
  };
  if (options.candidates.empty()) {
    for (std::size_t i = 0; i < points.size(); ++i) consider(i);
  } else {
    for (std::size_t i : options.candidates) {
      if (i >= points.size()) throw ConfigError("candidate row " + std::to_string(i) + " out of range");
      consider(i);
    }
  }
  if (k > pool.size()) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds the " + std::to_string(pool.size()) +
                      " searchable points");
  }

  auto before = [](const Candidate& a, const Candidate& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.index < b.index;
  };
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(), before);

  NeighborList out;
  out.query_index = options.exclude;
  out.entries.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.entries.push_back({pool[i].index, std::sqrt(pool[i].d2)});
  return out;
}

std::size_t majority_count(const Dataset& ds, std::size_t row, std::size_t k) {
  if (row >= ds.rows()) throw ConfigError("row " + std::to_string(row) + " out of range");
  std::vector<int> priority(ds.rows());
  for (std::size_t i = 0; i < ds.rows(); ++i) priority[i] = ds.labels()[i] == Label::positive ? 1 : 0;
  const auto nl = knn(ds.points(), ds.row(row), k, {.exclude = row, .tie_priority = priority});
  return static_cast<std::size_t>(std::count_if(nl.entries.begin(), nl.entries.end(), [&](const Neighbor& n) {
    return ds.labels()[n.index] == Label::negative;
  }));
}

std::vector<NeighborList> minority_neighbors(const Dataset& ds, std::span<const std::size_t> minority,
                                             std::size_t k) {
  std::vector<NeighborList> out;
  out.reserve(minority.size());
  for (std::size_t row : minority) {
    out.push_back(knn(ds.points(), ds.row(row), k, {.candidates = minority, .exclude = row}));
  }
  return out;
}

}  // namespace rebalance
