#pragma once

#include <cstdint>
#include <limits>

namespace discthin {

// Seeds are never split off a running generator. Every consumer derives its
// own key as derive_seed(parent, tag-or-index), so results do not depend on
// the order in which trials, rounds or coordinates are evaluated.

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Keyed PRF chain step: child key for `index` under `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// Top 53 bits of `bits` mapped to [0, 1).
double unit_interval(std::uint64_t bits) noexcept;

/// Component tags for derive_seed(master, tag).
namespace seed_tag {
inline constexpr std::uint64_t interleave = 0x696e746cULL;
inline constexpr std::uint64_t transform = 0x7866726dULL;
inline constexpr std::uint64_t walk = 0x77616c6bULL;
inline constexpr std::uint64_t balancer = 0x62616c6eULL;
inline constexpr std::uint64_t dataset_x = 0x64617478ULL;
inline constexpr std::uint64_t dataset_y = 0x64617479ULL;
inline constexpr std::uint64_t trial = 0x7472696cULL;
}  // namespace seed_tag

/// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class Prng {
 public:
  using result_type = std::uint64_t;

  explicit Prng(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  double uniform() noexcept { return unit_interval((*this)()); }
  /// Fair +1 / -1.
  int rademacher() noexcept { return ((*this)() >> 63) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace discthin
