// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qsc/constellation.hpp"
#include "qsc/counter_rng.hpp"
#include "qsc/keystream.hpp"
#include "qsc/receivers.hpp"
#include "qsc/stats.hpp"

namespace qsc {

using cxd = std::complex<double>;

enum class CipherBase { kY00, kQndm };

struct Scheme {
  CipherBase base = CipherBase::kY00;
  bool osk = false;
  bool dsr = false;
};

/// Parses "y00", "qndm+osk", "y00+osk+dsr", ... ('+'-separated flags).
Scheme parse_scheme(const std::string& text);
std::string scheme_name(const Scheme& scheme);

/// Keyed phase mapping shared by Alice's modulator and Bob's phase reference.
class Encoder {
 public:
  explicit Encoder(Y00Constellation c) : impl_(std::move(c)) {}
  explicit Encoder(QndmConstellation c) : impl_(std::move(c)) {}

  static Encoder build(CipherBase base, int m, double amplitude);

  double amplitude() const;
  bool qndm() const { return std::holds_alternative<QndmConstellation>(impl_); }
  int grid_size() const;
  double grid_spacing() const;
  const std::vector<LabeledPhase>& grid_labels() const;

  int index(const SlotKeys& keys, int bprime) const;
  double phase(const SlotKeys& keys, int bprime) const;
  double theta_of_index(int index) const;

  const Y00Constellation& y00() const { return std::get<Y00Constellation>(impl_); }
  const QndmConstellation& qndm_constellation() const { return std::get<QndmConstellation>(impl_); }

 private:
  std::variant<Y00Constellation, QndmConstellation> impl_;
};

enum class PlaintextSource { kFixed, kRandom, kProvided };

struct TrialConfig {
  Scheme scheme;
  int m = 16;
  double amplitude = 1.0;
  std::size_t n_slots = 1000;
  std::uint64_t master_seed = 1;
  KeystreamConfig keystream;  // m / with_osk / with_k2 are forced from scheme
  double dsr_strength = 0.0;  // |R_p|, required when scheme.dsr
  PlaintextSource plaintext_source = PlaintextSource::kRandom;
  int fixed_bit = 0;
  std::vector<std::uint8_t> plaintext;  // for kProvided, length n_slots
  double noise_scale = 1.0;             // test hook; 0 turns receivers noiseless
  int threads = 1;
  bool keep_records = false;
  bool track_mi = true;

  void validate() const;
};

/// Per-slot transcript of one trial.
struct SlotRecord {
  std::uint64_t slot = 0;
  double theta = 0.0;
  std::uint8_t bit = 0;
  double bob_sample = 0.0;
  double eve_re = 0.0;
  double eve_im = 0.0;
  std::uint8_t bob_decision = 0;
  std::uint32_t eve_phase_decision = 0;
  std::uint8_t eve_bit_decision = 0;
};

std::vector<std::uint8_t> make_plaintext(const TrialConfig& cfg);

/// Alice's transmitted phases: keyed constellation encoding plus optional DSR
/// dither drawn from the master-seeded uniform stream.
std::vector<double> alice_encode(const TrialConfig& cfg, const Encoder& enc,
                                 std::span<const SlotKeys> keys,
                                 std::span<const std::uint8_t> plaintext);

struct BobResult {
  std::vector<double> samples;
  std::vector<std::uint8_t> decisions;
  std::uint64_t errors = 0;
  double ber = 0.0;
  BinomialCi ci;
};

/// Keyed homodyne: rotate by the slot's basis phase, sample the real
/// quadrature at variance 1/4, threshold at zero.
BobResult bob_receive(std::span<const double> phases, std::span<const SlotKeys> keys,
                      std::span<const std::uint8_t> plaintext, const Encoder& enc,
                      double noise_scale, std::uint64_t master_seed);

/// Keyless heterodyne: y = |alpha| e^{i theta} + n, per-quadrature variance
/// 1/2 (total sigma_he^2 = 1). Takes no key material by construction.
std::vector<cxd> eve_receive(std::span<const double> phases, double amplitude, double noise_scale,
                             std::uint64_t master_seed);

enum class EveMode { kRunningKey, kDataBinary };

struct EveDecisions {
  std::vector<std::uint32_t> index;  // nearest grid point (running-key mode)
  std::vector<std::uint8_t> bit;     // even/odd mixture decision (data mode)
};

/// Grid geometry Eve is allowed to know (public constellation, no keys).
struct GridView {
  int n = 0;
  double spacing = 0.0;
  double amplitude = 0.0;
  const std::vector<LabeledPhase>* labels = nullptr;

  static GridView of(const Encoder& enc);
};

EveDecisions eve_decide(std::span<const cxd> samples, const GridView& grid, EveMode mode,
                        double quadrature_sigma = 0.7071067811865476);

/// Plug-in mutual information between true running keys and Eve's decisions.
PluginMi empirical_mi(std::span<const std::uint32_t> true_keys,
                      std::span<const std::uint32_t> decisions, std::uint32_t alphabet);

struct TrialReport {
  std::string scheme;
  int m = 0;
  double amplitude = 0.0;
  std::size_t n_slots = 0;
  std::uint64_t master_seed = 0;
  double noise_scale = 1.0;
  double dsr_strength = 0.0;

  std::uint64_t bob_errors = 0;
  double bob_ber = 0.0;
  BinomialCi bob_ci;

  std::uint64_t eve_key_errors = 0;  // decided running key(s) differ from true
  double eve_key_error_rate = 0.0;
  std::uint64_t eve_bit_errors = 0;
  double eve_bit_error_rate = 0.0;

  PluginMi mi_k1;
  PluginMi mi_k2;  // zero-filled for Y-00
  std::vector<std::uint64_t> decided_k1_hist;

  std::vector<SlotRecord> records;  // only when keep_records
};

TrialReport run_trial(const TrialConfig& cfg);

void write_trace_csv(const std::string& path, std::span<const SlotRecord> records);

/// Monte Carlo of the per-block M-ary nearest-neighbor problem behind the
/// closed-form eve_error_mary: M phases spaced by the mode's delta, uniform
/// priors, heterodyne samples, nearest-of-M decision. noise_scale 1 is the
/// physical per-quadrature variance 1/2; sqrt(2) reproduces the closed form's
/// sigma_he = 1 convention exactly.
double eve_block_symbol_error_mc(int m, double amplitude, SpacingMode mode, std::size_t n_slots,
                                 std::uint64_t seed, double noise_scale = 1.0);

}  // namespace qsc
