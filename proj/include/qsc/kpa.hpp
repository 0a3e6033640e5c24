// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsc/keystream.hpp"
#include "qsc/simulator.hpp"

namespace qsc {

/// Desk-scale exhaustive key search against stored heterodyne samples.
struct KpaConfig {
  CipherBase base = CipherBase::kY00;
  bool osk = false;
  int m = 16;
  double amplitude = 1.0;
  int key_bits = 16;  // keyspace 2^key_bits, refused above 2^20
  std::optional<std::uint32_t> taps;
  KeystreamKind keystream_kind = KeystreamKind::kLfsr;
  /// Acceptance radius in units of sigma_he: a key survives a slot when the
  /// predicted phase is within acceptance_sigma * noise_sigma of arc length
  /// of the measured phase (angular radius capped at pi).
  double acceptance_sigma = 3.0;
  /// sigma_he actually driving the stored samples; 0 selects the noiseless
  /// hook (exact phase match).
  double noise_sigma = 1.0;
  bool soft = false;  // additionally track likelihood-weighted equivocation
  int threads = 1;

  static constexpr int kMaxKeyBits = 20;

  void validate() const;
};

struct KpaResult {
  std::uint64_t keyspace = 0;
  /// survivors[n] = keys consistent with the first n slots; n = 0..n_slots.
  std::vector<std::uint64_t> survivors;
  std::vector<double> equivocation_bits;  // log2(survivors), 0 when none left
  std::vector<double> soft_equivocation_bits;  // posterior entropy, soft mode
  std::optional<std::uint64_t> unique_at;      // first n with survivors == 1
};

/// Consistency-scored exhaustive search: a key survives
/// while every predicted phase lies within the acceptance radius of the
/// sample; with OSK, while either data branch does.
KpaResult kpa_search(std::span<const cxd> eve_samples, std::span<const std::uint8_t> known_plaintext,
                     const KpaConfig& cfg);

/// Alice-side generation of a KPA experiment: the true key's transmissions
/// observed through Eve's heterodyne receiver.
struct KpaExperiment {
  std::vector<cxd> samples;
  std::vector<std::uint8_t> plaintext;
  std::uint64_t true_key = 0;
};

KpaExperiment make_kpa_experiment(const KpaConfig& cfg, std::size_t n_slots,
                                  std::uint64_t true_key, std::uint64_t seed);

/// Deterministic seeded shuffle, used for the wrong-plaintext control runs.
std::vector<std::uint8_t> permute_plaintext(std::span<const std::uint8_t> bits,
                                            std::uint64_t seed);

}  // namespace qsc
