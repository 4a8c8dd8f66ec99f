#pragma once

#include <cstdint>
#include <limits>

namespace exdyn {

/// Counter-based generator: the k-th output is a keyed hash of k, so a
/// (seed, stream) pair fully determines the sequence and independent
/// replicas simply use distinct streams. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }
  result_type next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Exponential with the given rate (> 0).
  double exponential(double rate);

  /// Uniform integer in [0, n), unbiased. n must be positive.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t tweak_;
  std::uint64_t counter_ = 0;
};

}  // namespace exdyn
