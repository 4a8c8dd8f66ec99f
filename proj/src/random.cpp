#include "exdyn/random.hpp"

#include <cmath>

namespace exdyn {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + kGolden)), tweak_(mix64(mix64(stream * kGolden + 0x5851F42D4C957F2DULL) ^ key_)) {}

CounterRng::result_type CounterRng::next_u64() {
  std::uint64_t z = mix64(counter_ * kGolden + key_);
  ++counter_;
  return mix64(z ^ tweak_);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

std::uint64_t CounterRng::below(std::uint64_t n) {
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace exdyn
