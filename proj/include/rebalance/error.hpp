#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rebalance {

/// Input data that cannot be used: unreadable files, malformed or missing
/// cells, a label column that is not two-class, too few minority rows.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter outside its documented range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to stderr unless a handler is installed. Passing an empty
// handler restores the default. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace rebalance
