#include "rebalance/rng.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace rebalance {

std::size_t SeededDraws::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("index draw over an empty range");
  const std::uint64_t range = n;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return static_cast<std::size_t>(x % range);
}

double SeededDraws::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t ScriptedDraws::index(std::size_t n) {
  if (indices_.empty()) throw std::out_of_range("scripted index draws exhausted");
  const std::size_t v = indices_.front();
  indices_.pop_front();
  if (v >= n) {
    throw std::out_of_range("scripted index " + std::to_string(v) + " outside [0, " +
                            std::to_string(n) + ")");
  }
  return v;
}

double ScriptedDraws::unit() {
  if (units_.empty()) throw std::out_of_range("scripted unit draws exhausted");
  const double v = units_.front();
  units_.pop_front();
  return v;
}

}  // namespace rebalance
