#include "rebalance/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "rebalance/error.hpp"
#include "rebalance/rng.hpp"

namespace rebalance {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else if (!(was_quoted && !quoted)) {
      cur.push_back(ch);
    }
  }
  fields.push_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

bool is_missing(std::string_view cell) {
  std::string lower;
  for (char c : cell) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower.empty() || lower == "na" || lower == "nan" || lower == "?";
}

bool parse_number(std::string_view cell, double& out) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> column_names, std::vector<double> values,
                 std::vector<Label> labels, LabelInfo label_info,
                 std::vector<std::vector<std::string>> categories)
    : column_names_(std::move(column_names)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      label_info_(std::move(label_info)),
      categories_(std::move(categories)) {
  if (categories_.empty()) categories_.resize(column_names_.size());
  if (categories_.size() != column_names_.size()) {
    throw DataError("category table does not match the column count");
  }
  if (values_.size() != labels_.size() * column_names_.size()) {
    throw DataError("feature matrix has " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(labels_.size()) + " rows x " +
                    std::to_string(column_names_.size()) + " columns");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite value at row " + std::to_string(i / cols() + 1) + ", column '" +
                      column_names_[i % cols()] + "'");
    }
  }
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

Dataset Dataset::with_rows(std::vector<double> values, std::vector<Label> labels) const {
  return Dataset(column_names_, std::move(values), std::move(labels), label_info_, categories_);
}

Dataset parse_csv(std::istream& in, std::string_view label_column, std::string_view positive_label) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) throw DataError("CSV input has no header row");

  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw DataError("unknown label column '" + std::string(label_column) + "'");
  }
  const auto label_pos = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::vector<std::string>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError("row " + std::to_string(cells.size() + 1) + " (line " +
                      std::to_string(line_no) + ") has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (is_missing(fields[c])) {
        throw DataError("missing value at row " + std::to_string(cells.size() + 1) + " (line " +
                        std::to_string(line_no) + "), column '" + header[c] + "'");
      }
    }
    cells.push_back(std::move(fields));
  }

  std::set<std::string> distinct;
  for (const auto& r : cells) distinct.insert(r[label_pos]);
  if (distinct.size() < 2) {
    throw DataError("label column '" + std::string(label_column) + "' has fewer than two distinct labels");
  }
  if (distinct.size() > 2) {
    throw DataError("label column '" + std::string(label_column) + "' is not binary: " +
                    std::to_string(distinct.size()) + " distinct labels");
  }
  if (!distinct.contains(std::string(positive_label))) {
    throw DataError("positive label '" + std::string(positive_label) + "' does not occur in column '" +
                    std::string(label_column) + "'");
  }

  Dataset::LabelInfo info;
  info.column = std::string(label_column);
  info.positive = std::string(positive_label);
  for (const auto& d : distinct) {
    if (d != positive_label) info.negative = d;
  }
  info.position = label_pos;

  std::vector<std::string> names;
  std::vector<std::size_t> source_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_pos) continue;
    names.push_back(header[c]);
    source_cols.push_back(c);
  }

  const std::size_t rows = cells.size();
  const std::size_t cols = names.size();
  std::vector<double> values(rows * cols);
  std::vector<std::vector<std::string>> categories(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t src = source_cols[j];
    bool numeric = true;
    for (std::size_t r = 0; r < rows && numeric; ++r) {
      numeric = parse_number(cells[r][src], values[r * cols + j]);
    }
    if (numeric) continue;
    std::set<std::string> cats;
    for (const auto& r : cells) cats.insert(r[src]);
    categories[j].assign(cats.begin(), cats.end());
    std::map<std::string, double> code;
    for (std::size_t i = 0; i < categories[j].size(); ++i) code[categories[j][i]] = static_cast<double>(i);
    for (std::size_t r = 0; r < rows; ++r) values[r * cols + j] = code.at(cells[r][src]);
  }

  std::vector<Label> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    labels[r] = cells[r][label_pos] == positive_label ? Label::positive : Label::negative;
  }
  return Dataset(std::move(names), std::move(values), std::move(labels), std::move(info),
                 std::move(categories));
}

Dataset load_csv(const std::filesystem::path& path, std::string_view label_column,
                 std::string_view positive_label) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, label_column, positive_label);
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_csv(const Dataset& ds, std::ostream& out) {
  const auto& info = ds.label_info();
  const std::size_t total = ds.cols() + 1;
  for (std::size_t c = 0, j = 0; c < total; ++c) {
    if (c > 0) out << ',';
    out << quote_if_needed(c == info.position ? info.column : ds.column_names()[j++]);
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t c = 0, j = 0; c < total; ++c) {
      if (c > 0) out << ',';
      if (c == info.position) {
        out << quote_if_needed(ds.labels()[r] == Label::positive ? info.positive : info.negative);
      } else {
        out << format_number(ds.at(r, j++));
      }
    }
    out << '\n';
  }
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_csv(ds, out);
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

Partition partition(const Dataset& ds) {
  Partition p;
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    (ds.labels()[i] == Label::positive ? p.minority : p.majority).push_back(i);
  }
  return p;
}

Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  std::vector<double> values;
  values.reserve(rows.size() * ds.cols());
  std::vector<Label> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= ds.rows()) throw std::out_of_range("row index " + std::to_string(r) + " out of range");
    const auto src = ds.row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(ds.labels()[r]);
  }
  return ds.with_rows(std::move(values), std::move(labels));
}

SplitPair stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  }
  const Partition parts = partition(ds);
  SeededDraws draws(seed);
  SplitPair out;
  out.train_fraction = train_fraction;
  for (const auto* cls : {&parts.minority, &parts.majority}) {
    const char* name = cls == &parts.minority ? "minority" : "majority";
    if (cls->size() < 2) {
      throw DataError(std::string(name) + " class has " + std::to_string(cls->size()) +
                      " rows; a stratified split needs at least 2");
    }
    std::vector<std::size_t> order = *cls;
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[draws.index(i + 1)]);
    }
    const auto n_train = static_cast<std::size_t>(std::llround(order.size() * train_fraction));
    if (n_train == 0 || n_train == order.size()) {
      throw DataError(std::string(name) + " class would receive no rows in the " +
                      (n_train == 0 ? "train" : "test") + " partition");
    }
    out.train_rows.insert(out.train_rows.end(), order.begin(), order.begin() + n_train);
    out.test_rows.insert(out.test_rows.end(), order.begin() + n_train, order.end());
  }
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = select_rows(ds, out.train_rows);
  out.test = select_rows(ds, out.test_rows);
  return out;
}

Standardizer Standardizer::fit(const Dataset& train) {
  if (train.rows() == 0) throw DataError("cannot fit a standardizer on an empty dataset");
  const std::size_t n = train.rows();
  const std::size_t d = train.cols();
  Standardizer s;
  s.means_.assign(d, 0.0);
  s.stddevs_.assign(d, 0.0);
  s.constant_.assign(d, false);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) s.means_[c] += train.at(r, c);
  }
  for (auto& m : s.means_) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = train.at(r, c) - s.means_[c];
      s.stddevs_[c] += dev * dev;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    s.stddevs_[c] = std::sqrt(s.stddevs_[c] / static_cast<double>(n));
    s.constant_[c] = s.stddevs_[c] <= 1e-12 * std::max(1.0, std::abs(s.means_[c]));
  }
  return s;
}

Dataset Standardizer::apply(const Dataset& ds) const {
  if (ds.cols() != means_.size()) throw ConfigError("standardizer column count mismatch");
  std::vector<double> values = ds.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t c = i % ds.cols();
    values[i] = constant_[c] ? 0.0 : (values[i] - means_[c]) / stddevs_[c];
  }
  return ds.with_rows(std::move(values), ds.labels());
}

Dataset Standardizer::inverse(const Dataset& ds) const {
  if (ds.cols() != means_.size()) throw ConfigError("standardizer column count mismatch");
  std::vector<double> values = ds.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t c = i % ds.cols();
    values[i] = constant_[c] ? means_[c] : values[i] * stddevs_[c] + means_[c];
  }
  return ds.with_rows(std::move(values), ds.labels());
}

}  // namespace rebalance
