#pragma once

// Seeding and bit generation for deterministic experiments.
//
// Every draw in the library goes through SplitMix64 and `uniform_below`, both
// fully specified here, so a (seed, word length, index) triple names the same
// word on every platform. std::uniform_int_distribution is avoided because
// its algorithm is implementation-defined.
//
// Seed derivation, bit-exact:
//
//   mix64(z):  z += 0x9e3779b97f4a7c15
//              z  = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//              z  = (z ^ (z >> 27)) * 0x94d049bb133111eb
//              return z ^ (z >> 31)                      (all mod 2^64)
//
//   run_key(master, L)      = mix64(master ^ mix64(L))
//   word_seed(master, L, i) = mix64(run_key(master, L) + i)
//
// Word i of a sampled run draws its letters from SplitMix64(word_seed(...)).
// Because seeds are per word and not per chunk, splitting a run into any
// number of chunks yields the same multiset of words.

#include <cstdint>
#include <limits>

namespace pants {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t run_key(std::uint64_t master_seed, std::uint64_t word_length) noexcept {
  return mix64(master_seed ^ mix64(word_length));
}

constexpr std::uint64_t word_seed(std::uint64_t master_seed, std::uint64_t word_length,
                                  std::uint64_t index) noexcept {
  return mix64(run_key(master_seed, word_length) + index);
}

// SplitMix64 (Steele, Lea, Flood). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

 private:
  std::uint64_t state_;
};

// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
// Requires a generator producing the full 64-bit range and bound >= 1.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  static_assert(Rng::min() == 0 &&
                    Rng::max() == std::numeric_limits<std::uint64_t>::max(),
                "uniform_below needs a full-range 64-bit generator");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace pants
