// Counter-based random substreams. Every run gets its own stream keyed by
// (seed, run index), so results do not depend on how runs are scheduled.

#pragma once

#include <cstdint>

namespace bellfacts {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer (Steele, Lea, Flood 2014); a bijection on 64 bits.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + kGolden));
}

class RunStream {
 public:
  constexpr RunStream(std::uint64_t seed, std::uint64_t run)
      : key_(derive_seed(seed, run)) {}

  constexpr std::uint64_t next() {
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
  }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1 (multiply-shift reduction).
  constexpr std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<uint128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bellfacts
