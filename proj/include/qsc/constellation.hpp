// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qsc/angles.hpp"

namespace qsc {

/// A point on the phase circle at fixed optical amplitude |alpha|.
struct PhasePoint {
  double theta = 0.0;      // canonical [0, 2pi)
  double amplitude = 1.0;  // dimensionless square-root photon number, > 0

  PhasePoint() = default;
  PhasePoint(double theta_in, double amplitude_in);
};

/// Constellation point with its cipher labels. k2 is used by QNDM only.
struct LabeledPhase {
  double theta = 0.0;
  int k1 = 0;
  int k2 = 0;
  int bit = 0;
};

/// Placement convention tying the data bit to the parity of the selecting
/// running key ("even key carries 0 at the base point").
enum class BitParityRule { kEvenKeyZero };

struct OskConfig {
  bool enabled = false;
};

/// Y-00 phase constellation: M antipodal communication bases, 2M points.
class Y00Constellation {
 public:
  static Y00Constellation build(int m_bases, double amplitude);

  int bases() const { return m_; }
  double amplitude() const { return amplitude_; }
  double step() const { return step_; }  // adjacent spacing pi/M
  BitParityRule parity_rule() const { return BitParityRule::kEvenKeyZero; }
  const std::vector<LabeledPhase>& points() const { return points_; }

  /// Phase for running key j in 1..M and data bit, with an optional OSK flip:
  /// theta = pi (j-1)/M + pi (b' xor parity(j)), b' = bit xor osk.
  PhasePoint encode_phase(int key_j, int bit, std::optional<int> osk_bit = std::nullopt) const;

  /// Same mapping under an explicit OSK configuration; an osk bit may only be
  /// supplied when OSK is enabled.
  PhasePoint encode_phase(int key_j, int bit, const OskConfig& osk,
                          std::optional<int> osk_bit) const;

  /// Index on the 2M grid for the same mapping.
  int encode_index(int key_j, int bit, std::optional<int> osk_bit = std::nullopt) const;

  double theta_of_index(int index) const;
  int basis_of_index(int index) const { return index % m_ + 1; }

  /// Recovers the data bit from an on-grid phase given the running key.
  int decode_bit(double theta, int key_j, std::optional<int> osk_bit = std::nullopt) const;

 private:
  int m_ = 0;
  double amplitude_ = 0.0;
  double step_ = 0.0;
  std::vector<LabeledPhase> points_;
};

/// QNDM constellation: M mapping patterns subdividing each of the 2M basis
/// regions Gamma_l into M fine phases, 2M^2 points in total.
class QndmConstellation {
 public:
  static QndmConstellation build(int m_bases, double amplitude);

  int bases() const { return m_; }
  double amplitude() const { return amplitude_; }
  double delta() const { return delta_; }  // fine spacing (pi/M)/M
  int block_count() const { return 2 * m_; }
  int points_per_block() const { return m_; }
  const std::vector<LabeledPhase>& points() const { return points_; }

  /// Phase for the running-key pair (k1 from PRNG-1, k2 from PRNG-2) and bit.
  /// The pair selects block Gamma_l with l-1 = (k2-k1) mod M and fine slot
  /// k1-1; the bit flips to the antipodal block under the parity rule.
  PhasePoint encode_phase(int k1, int k2, int bit, std::optional<int> osk_bit = std::nullopt) const;

  PhasePoint encode_phase(int k1, int k2, int bit, const OskConfig& osk,
                          std::optional<int> osk_bit) const;

  int encode_index(int k1, int k2, int bit, std::optional<int> osk_bit = std::nullopt) const;

  double theta_of_index(int index) const;
  int block_of_index(int index) const { return index / m_; }
  int slot_of_index(int index) const { return index % m_; }

  /// Labels of grid point: k1 = slot+1, k2 from the per-block cyclic shift.
  LabeledPhase labels_of_index(int index) const;

 private:
  int m_ = 0;
  double amplitude_ = 0.0;
  double base_step_ = 0.0;  // pi/M
  double delta_ = 0.0;
  std::vector<LabeledPhase> points_;
};

/// Deliberate signal randomization: keyless uniform phase dither of strength
/// |R_p| (arc length), i.e. +-|R_p|/|alpha| in angle.
struct DsrConfig {
  double strength = 0.0;  // |R_p|, arc-length units
  enum class Density { kUniform } density = Density::kUniform;

  /// Checked construction per the operating range 1 <= sigma_he |R_p| <= pi |alpha| / 2.
  static DsrConfig validated(double strength, double amplitude, double sigma_he = 1.0);
};

PhasePoint apply_dsr(const PhasePoint& point, const DsrConfig& config,
                     const std::function<double()>& uniform01);

struct MaskingReport {
  double gamma_q = 0.0;            // M sigma / (pi |alpha|)
  std::uint64_t masked_points = 0; // adjacent fine points within one sigma of arc
  bool condition_met = false;
  double lambda = 5.0;
};

/// Masking metrics for a uniform grid with the given fine spacing; the
/// condition requires the masked span to cover Lambda blocks of
/// points_per_block fine points each.
MaskingReport masking_metrics(int m_bases, double amplitude, double fine_spacing,
                              int points_per_block, double sigma, double lambda = 5.0);

MaskingReport masking_metrics(const QndmConstellation& c, double sigma, double lambda = 5.0);
MaskingReport masking_metrics(const Y00Constellation& c, double sigma, double lambda = 5.0);

}  // namespace qsc
