// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qsc {

/// Counter-based random source: every variate is a pure function of
/// (seed, stream, slot, draw), so sharding slots across any number of workers
/// reproduces the single-threaded sequence bit for bit.
class CounterRng {
 public:
  enum Stream : std::uint64_t {
    kBobNoise = 1,
    kEveNoise = 2,
    kDsr = 3,
    kPlaintext = 4,
    kPermute = 5,
  };

  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  double uniform01(std::uint64_t slot, std::uint64_t draw = 0) const {
    return static_cast<double>(word(slot, draw) >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; draw indexes independent variates.
  double normal(std::uint64_t slot, std::uint64_t draw = 0) const {
    return normal_pair(slot, draw).first;
  }

  std::pair<double, double> normal_pair(std::uint64_t slot, std::uint64_t draw = 0) const {
    const double u1 =
        (static_cast<double>(word(slot, 2 * draw) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(word(slot, 2 * draw + 1) >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  int bit(std::uint64_t slot, std::uint64_t draw = 0) const {
    return static_cast<int>(word(slot, draw) & 1u);
  }

  std::uint64_t word(std::uint64_t slot, std::uint64_t draw = 0) const {
    std::uint64_t x = seed_;
    x = mix(x + kGolden * (stream_ + 1));
    x = mix(x + kGolden * (slot + 1));
    x = mix(x + kGolden * (draw + 1));
    return x;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace qsc
