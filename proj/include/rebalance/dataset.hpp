#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rebalance {

enum class Label : std::uint8_t { negative = 0, positive = 1 };

// Read-only view of a row-major point matrix.
struct PointView {
  std::span<const double> values;
  std::size_t dims = 0;

  std::size_t size() const { return dims == 0 ? 0 : values.size() / dims; }
  std::span<const double> operator[](std::size_t i) const {
    return values.subspan(i * dims, dims);
  }
};

// Two-class tabular data. Features are stored row-major; the label column is
// held apart from the features but remembers where it sat in the source file
// so write_csv reproduces the original column layout.
//
// `categories[c]` lists the lexicographically sorted category strings of a
// categorical column c (code i = categories[c][i]); numeric columns have an
// empty list.
class Dataset {
 public:
  struct LabelInfo {
    std::string column = "class";
    std::string positive = "1";
    std::string negative = "0";
    std::size_t position = 0;  // index of the label column among all CSV columns
  };

  Dataset() = default;

  // Throws DataError when shapes disagree or a value is not finite.
  Dataset(std::vector<std::string> column_names, std::vector<double> values,
          std::vector<Label> labels, LabelInfo label_info,
          std::vector<std::vector<std::string>> categories = {});

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return column_names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * cols(), cols());
  }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  PointView points() const { return {values_, cols()}; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::vector<std::vector<std::string>>& categories() const { return categories_; }
  const LabelInfo& label_info() const { return label_info_; }
  const std::string& positive_label() const { return label_info_.positive; }

  std::size_t count(Label label) const;
  std::size_t minority_count() const { return count(Label::positive); }
  std::size_t majority_count() const { return count(Label::negative); }

  // Same metadata, new rows.
  Dataset with_rows(std::vector<double> values, std::vector<Label> labels) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<double> values_;
  std::vector<Label> labels_;
  LabelInfo label_info_;
  std::vector<std::vector<std::string>> categories_;
};

/// Parses comma-delimited text with a header row. Non-label columns whose
/// cells all parse as finite numbers are numeric; any other column is
/// categorical and integer-encoded in lexicographic category order. Throws
/// DataError for an unknown label column, fewer or more than two labels, a
/// positive label that never occurs, ragged rows, and missing cells (empty,
/// NA, NaN or ?), reporting the row and column.
Dataset parse_csv(std::istream& in, std::string_view label_column, std::string_view positive_label);
Dataset load_csv(const std::filesystem::path& path, std::string_view label_column,
                 std::string_view positive_label);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

void write_csv(const Dataset& ds, std::ostream& out);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

struct Partition {
  std::vector<std::size_t> minority;
  std::vector<std::size_t> majority;
};

// Row indices of each class, in original row order.
Partition partition(const Dataset& ds);

Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows);

struct SplitPair {
  Dataset train;
  Dataset test;
  double train_fraction = 0.8;
  std::vector<std::size_t> train_rows;  // source row indices, ascending
  std::vector<std::size_t> test_rows;
};

/// Stratified split: each class sends round(count * train_fraction) rows to
/// train, chosen by a seeded Fisher-Yates shuffle; both partitions keep the
/// original row order. Throws ConfigError unless 0 < train_fraction < 1 and
/// DataError when a class would be empty in either partition.
SplitPair stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

// Per-column z-scoring with population statistics.
class Standardizer {
 public:
  static Standardizer fit(const Dataset& train);

  Dataset apply(const Dataset& ds) const;
  Dataset inverse(const Dataset& ds) const;

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& stddevs() const { return stddevs_; }
  bool is_constant(std::size_t col) const { return constant_[col]; }

 private:
  std::vector<double> means_;
  std::vector<double> stddevs_;
  std::vector<bool> constant_;
};

}  // namespace rebalance
