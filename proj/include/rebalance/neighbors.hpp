#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rebalance/dataset.hpp"

namespace rebalance {

struct Neighbor {
  std::size_t index = 0;  // row in the searched PointView
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct NeighborList {
  std::optional<std::size_t> query_index;
  std::vector<Neighbor> entries;
};

double euclidean(std::span<const double> a, std::span<const double> b);

// Options for a k-nearest-neighbour query.
//
// `candidates` restricts the search to the listed rows (empty: all rows).
// `exclude` removes one row, normally the query itself. Equidistant
// candidates are ordered by `tie_priority[row]` (lower first) when given,
// then by ascending row index.
struct KnnQuery {
  std::span<const std::size_t> candidates;
  std::optional<std::size_t> exclude;
  std::span<const int> tie_priority;
};

/// Exact brute-force Euclidean k-NN. Throws ConfigError when k is zero or
/// exceeds the number of searchable points.
NeighborList knn(PointView points, std::span<const double> query, std::size_t k,
                 const KnnQuery& options = {});

// Number of majority rows among the k nearest neighbours of `row`, searched
// over every row of the dataset except `row` itself. When a majority and a
// minority row are equidistant the majority row ranks first.
std::size_t majority_count(const Dataset& ds, std::size_t row, std::size_t k);

// k nearest minority-class neighbours of each minority row, in partition
// order; entry indices are dataset rows.
std::vector<NeighborList> minority_neighbors(const Dataset& ds, std::span<const std::size_t> minority,
                                             std::size_t k);

}  // namespace rebalance
