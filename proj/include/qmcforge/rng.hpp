#pragma once

// Counter-based random streams (Philox4x32-10).
//
// Every draw is a pure function of (seed, stream, position), so a search or
// randomization that gives coordinate j its own stream produces the same
// values regardless of evaluation order or worker count.

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace qmcforge {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57;
  static constexpr std::uint32_t kW0 = 0x9E3779B9;
  static constexpr std::uint32_t kW1 = 0xBB67AE85;
};

// Mixes a list of tags into one 64-bit stream identifier (splitmix64 steps).
inline std::uint64_t streamId(std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t t : tags) {
    h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

// Stream tags, so that unrelated consumers of one seed never collide.
enum class StreamTag : std::uint64_t {
  RandomSearch = 1,
  RandomCbc = 2,
  RandomKorobov = 3,
  Shift = 10,
  DigitalShift = 11,
  LinearScramble = 12,
  NestedScramble = 13,
  IidPoints = 14,
  Sampling = 20,
};

class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t nextU64() {
    if (half_ == 0) {
      block_ = at(position_);
      ++position_;
    }
    const std::uint64_t out = (std::uint64_t{block_[2 * half_]} << 32) | block_[2 * half_ + 1];
    half_ ^= 1U;
    return out;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), unbiased (bitmask rejection).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
    for (;;) {
      const std::uint64_t v = nextU64() & mask;
      if (v < bound) return v;
    }
  }

  // Random word with only the low `bits` bits possibly set.
  std::uint64_t bits(int count) {
    if (count <= 0) return 0;
    const std::uint64_t v = nextU64();
    return count >= 64 ? v : v & ((std::uint64_t{1} << count) - 1);
  }

  // Random access: 128 bits at block `position`, independent of stream state.
  Philox4x32::Counter at(std::uint64_t position) const {
    return Philox4x32::generate(
        {static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  }

  std::uint64_t wordAt(std::uint64_t position) const {
    const auto b = at(position);
    return (std::uint64_t{b[0]} << 32) | b[1];
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  Philox4x32::Counter block_{};
  unsigned half_ = 0;
};

inline CounterStream makeStream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0, std::uint64_t b = 0) {
  return CounterStream(seed, streamId({static_cast<std::uint64_t>(tag), a, b}));
}

}  // namespace qmcforge
