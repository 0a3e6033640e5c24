// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qsc {

enum class KeystreamKind { kLfsr, kCounterKeyed };

/// Fibonacci LFSR, right shift, output taken from bit 0 before the shift, so
/// the first `width` output bits reproduce the seed LSB-first. taps_mask bit
/// (width - t) is set for each polynomial tap t.
struct Lfsr {
  std::uint32_t state = 1;
  std::uint32_t taps_mask = 0;
  int width = 16;

  static std::uint32_t maximal_taps(int width);
  static Lfsr make(int width, std::uint64_t seed, std::optional<std::uint32_t> taps = std::nullopt);

  int next_bit();
};

/// Counter-keyed bit source: bit i of a splitmix64-style stream of the key.
struct CounterBits {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;
  std::uint64_t buffer = 0;
  int remaining = 0;

  int next_bit();
};

/// Running keys for one slot; unused members stay 0.
struct SlotKeys {
  std::uint32_t k1 = 1;
  std::uint32_t k2 = 1;
  std::uint8_t osk = 0;
};

/// PRNG expansion of the secret key, chunked per slot into log2(M) bits of
/// basis selection, one optional OSK bit, and log2(M) bits of the QNDM second
/// stream, in that order. Non-power-of-two M uses rejection sampling on
/// ceil(log2 M)-bit chunks.
struct KeystreamConfig {
  KeystreamKind kind = KeystreamKind::kLfsr;
  int m = 2;
  bool with_osk = false;
  bool with_k2 = false;
  int key_bits = 16;  // LFSR width; must be in 1..32 for kLfsr
  std::uint64_t key = 1;
  std::optional<std::uint32_t> taps;
  bool osk_independent = false;  // OSK branch from its own generator
  std::uint64_t osk_key = 0;
};

/// Streaming form used by the exhaustive key search.
class KeystreamStream {
 public:
  explicit KeystreamStream(const KeystreamConfig& config);

  SlotKeys next();

 private:
  int next_main_bit();
  int next_osk_bit();
  std::uint32_t next_chunk();

  KeystreamConfig cfg_;
  Lfsr lfsr_;
  CounterBits counter_;
  Lfsr osk_lfsr_;
  CounterBits osk_counter_;
  int chunk_bits_ = 1;
};

std::vector<SlotKeys> generate_keystream(const KeystreamConfig& config, std::size_t n_slots);

/// Folds an arbitrary-length key (e.g. 256-bit hex material) into the 64-bit
/// seed consumed by the generators.
std::uint64_t fold_key_bytes(const std::vector<std::uint8_t>& bytes);

}  // namespace qsc
