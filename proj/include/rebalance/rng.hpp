#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>

namespace rebalance {

// Source of the random choices a resampler makes. Resamplers consume draws in
// a fixed, documented order, so any two sources producing the same draw
// sequence yield the same synthetic samples.
class DrawSource {
 public:
  virtual ~DrawSource() = default;

  /// Uniform integer in [0, n). n must be positive.
  virtual std::size_t index(std::size_t n) = 0;

  /// Uniform real in [0, 1).
  virtual double unit() = 0;
};

// std::mt19937_64 is specified bit-exactly by the standard. The
// distributions in <random> are not, so both draws are implemented here:
// index() rejects the top partial bucket and reduces modulo n; unit() takes
// the high 53 bits and scales by 2^-53.
class SeededDraws final : public DrawSource {
 public:
  explicit SeededDraws(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) override;
  double unit() override;

 private:
  std::mt19937_64 engine_;
};

// Replays fixed draws. Used to pin a resampler to a hand-worked example.
// Running out of scripted values throws std::out_of_range.
class ScriptedDraws final : public DrawSource {
 public:
  ScriptedDraws(std::deque<std::size_t> indices, std::deque<double> units)
      : indices_(std::move(indices)), units_(std::move(units)) {}

  std::size_t index(std::size_t n) override;
  double unit() override;

  bool exhausted() const { return indices_.empty() && units_.empty(); }

 private:
  std::deque<std::size_t> indices_;
  std::deque<double> units_;
};

}  // namespace rebalance
