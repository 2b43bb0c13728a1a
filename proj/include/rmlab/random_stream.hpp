#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace rmlab {

/// Counter-keyed random stream.
///
/// A stream is identified by a 64-bit key derived from (master seed,
/// experiment id, trial index); the bit generator state is a pure function of
/// that key. Trials therefore draw identical numbers no matter which thread
/// runs them or in what order. Satisfies UniformRandomBitGenerator, so the
/// standard distributions can consume it directly.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key);

  static RandomStream for_trial(std::uint64_t master_seed, std::string_view experiment_id,
                                std::uint64_t trial_index);

  /// Independent child stream; depends only on this stream's key and `index`.
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t state_[4];
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);

}  // namespace rmlab
