// SPDX-License-Identifier: Apache-2.0
#include "qsc/keystream.hpp"

#include <bit>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Maximal-length tap sets (polynomial exponents, x^w term included).
const std::uint8_t kTapTable[][4] = {
    {0},            // width 0 unused
    {1},            // 1
    {2, 1},         // 2
    {3, 2},         // 3
    {4, 3},         // 4
    {5, 3},         // 5
    {6, 5},         // 6
    {7, 6},         // 7
    {8, 6, 5, 4},   // 8
    {9, 5},         // 9
    {10, 7},        // 10
    {11, 9},        // 11
    {12, 6, 4, 1},  // 12
    {13, 4, 3, 1},  // 13
    {14, 5, 3, 1},  // 14
    {15, 14},       // 15
    {16, 15, 13, 4},
    {17, 14},
    {18, 11},
    {19, 6, 2, 1},
    {20, 17},
    {21, 19},
    {22, 21},
    {23, 18},
    {24, 23, 22, 17},
    {25, 22},
    {26, 6, 2, 1},
    {27, 5, 2, 1},
    {28, 25},
    {29, 27},
    {30, 6, 4, 1},
    {31, 28},
    {32, 22, 2, 1},
};

}  // namespace

std::uint32_t Lfsr::maximal_taps(int width) {
  if (width < 1 || width > 32) throw InvalidParameter("Lfsr: width must be in 1..32");
  std::uint32_t mask = 0;
  for (int t : kTapTable[width]) {
    if (t == 0) break;
    mask |= 1u << (width - t);
  }
  return mask;
}

Lfsr Lfsr::make(int width, std::uint64_t seed, std::optional<std::uint32_t> taps) {
  if (width < 1 || width > 32) throw InvalidParameter("Lfsr: width must be in 1..32");
  Lfsr l;
  l.width = width;
  l.taps_mask = taps.value_or(maximal_taps(width));
  const std::uint64_t mask = width == 32 ? 0xffffffffULL : ((1ULL << width) - 1ULL);
  l.state = static_cast<std::uint32_t>(seed & mask);
  return l;
}

int Lfsr::next_bit() {
  const int out = static_cast<int>(state & 1u);
  const int fb = std::popcount(state & taps_mask) & 1;
  state = (state >> 1) | (static_cast<std::uint32_t>(fb) << (width - 1));
  return out;
}

int CounterBits::next_bit() {
  if (remaining == 0) {
    buffer = splitmix64(splitmix64(key) ^ counter);
    ++counter;
    remaining = 64;
  }
  const int out = static_cast<int>(buffer & 1u);
  buffer >>= 1;
  --remaining;
  return out;
}

KeystreamStream::KeystreamStream(const KeystreamConfig& config) : cfg_(config) {
  if (cfg_.m < 1) throw InvalidParameter("KeystreamStream: M must be positive");
  chunk_bits_ = cfg_.m > 1 ? std::bit_width(static_cast<unsigned>(cfg_.m - 1)) : 0;
  if (cfg_.kind == KeystreamKind::kLfsr) {
    lfsr_ = Lfsr::make(cfg_.key_bits, cfg_.key, cfg_.taps);
    if (cfg_.osk_independent) osk_lfsr_ = Lfsr::make(cfg_.key_bits, cfg_.osk_key, cfg_.taps);
  } else {
    counter_ = CounterBits{cfg_.key, 0, 0, 0};
    if (cfg_.osk_independent) osk_counter_ = CounterBits{cfg_.osk_key, 0, 0, 0};
  }
}

int KeystreamStream::next_main_bit() {
  return cfg_.kind == KeystreamKind::kLfsr ? lfsr_.next_bit() : counter_.next_bit();
}

int KeystreamStream::next_osk_bit() {
  if (!cfg_.osk_independent) return next_main_bit();
  return cfg_.kind == KeystreamKind::kLfsr ? osk_lfsr_.next_bit() : osk_counter_.next_bit();
}

std::uint32_t KeystreamStream::next_chunk() {
  if (cfg_.m == 1) return 0;
  const bool pow2 = (cfg_.m & (cfg_.m - 1)) == 0;
  for (;;) {
    std::uint32_t v = 0;
    for (int b = 0; b < chunk_bits_; ++b) v = (v << 1) | static_cast<std::uint32_t>(next_main_bit());
    if (pow2 || v < static_cast<std::uint32_t>(cfg_.m)) return v;
  }
}

SlotKeys KeystreamStream::next() {
  SlotKeys s;
  s.k1 = next_chunk() + 1;
  if (cfg_.with_osk) s.osk = static_cast<std::uint8_t>(next_osk_bit());
  if (cfg_.with_k2) s.k2 = next_chunk() + 1;
  return s;
}

std::vector<SlotKeys> generate_keystream(const KeystreamConfig& config, std::size_t n_slots) {
  KeystreamStream stream(config);
  std::vector<SlotKeys> out(n_slots);
  for (auto& s : out) s = stream.next();
  return out;
}

std::uint64_t fold_key_bytes(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint8_t b : bytes) h = splitmix64(h ^ b);
  return h;
}

}  // namespace qsc
