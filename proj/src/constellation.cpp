// SPDX-License-Identifier: Apache-2.0
#include "qsc/constellation.hpp"

#include <cmath>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

void require_key(int key, int m, const char* who) {
  if (key < 1 || key > m) throw InvalidParameter(std::string(who) + ": running key out of 1..M");
}

void require_bit(int bit, const char* who) {
  if (bit != 0 && bit != 1) throw InvalidParameter(std::string(who) + ": bit must be 0 or 1");
}

int osk_value(const std::optional<int>& osk, const char* who) {
  if (!osk) return 0;
  if (*osk != 0 && *osk != 1) throw InvalidParameter(std::string(who) + ": osk bit must be 0 or 1");
  return *osk;
}

void require_osk_config(const OskConfig& osk, const std::optional<int>& osk_bit,
                        const char* who) {
  if (!osk.enabled && osk_bit.has_value())
    throw InvalidParameter(std::string(who) + ": osk bit supplied but OSK is disabled");
}

}  // namespace

PhasePoint::PhasePoint(double theta_in, double amplitude_in)
    : theta(canonical_angle(theta_in)), amplitude(amplitude_in) {
  if (!std::isfinite(theta_in)) throw InvalidParameter("PhasePoint: theta must be finite");
  if (!(amplitude_in > 0.0)) throw InvalidParameter("PhasePoint: amplitude must be positive");
}

Y00Constellation Y00Constellation::build(int m_bases, double amplitude) {
  if (m_bases < 1) throw InvalidParameter("build_y00: M must be a positive integer");
  if (!(amplitude > 0.0)) throw InvalidParameter("build_y00: amplitude must be positive");
  Y00Constellation c;
  c.m_ = m_bases;
  c.amplitude_ = amplitude;
  c.step_ = kPi / static_cast<double>(m_bases);
  c.points_.resize(2 * static_cast<std::size_t>(m_bases));
  for (int j = 1; j <= m_bases; ++j)
    for (int bprime = 0; bprime <= 1; ++bprime) {
      const int idx = c.encode_index(j, bprime);
      LabeledPhase& p = c.points_[static_cast<std::size_t>(idx)];
      p.theta = c.theta_of_index(idx);
      p.k1 = j;
      p.k2 = 0;
      p.bit = bprime;
    }
  return c;
}

double Y00Constellation::theta_of_index(int index) const {
  // Upper-half points are exact antipodes of the lower half.
  if (index < m_) return static_cast<double>(index) * step_;
  return canonical_angle(static_cast<double>(index - m_) * step_ + kPi);
}

int Y00Constellation::encode_index(int key_j, int bit, std::optional<int> osk_bit) const {
  require_key(key_j, m_, "encode_phase");
  require_bit(bit, "encode_phase");
  const int bprime = bit ^ osk_value(osk_bit, "encode_phase");
  const int placement = bprime ^ (key_j & 1);  // parity(j) = j mod 2
  return (key_j - 1) + m_ * placement;
}

PhasePoint Y00Constellation::encode_phase(int key_j, int bit, std::optional<int> osk_bit) const {
  return PhasePoint(theta_of_index(encode_index(key_j, bit, osk_bit)), amplitude_);
}

PhasePoint Y00Constellation::encode_phase(int key_j, int bit, const OskConfig& osk,
                                          std::optional<int> osk_bit) const {
  require_osk_config(osk, osk_bit, "encode_phase");
  return encode_phase(key_j, bit, osk_bit);
}

int Y00Constellation::decode_bit(double theta, int key_j, std::optional<int> osk_bit) const {
  require_key(key_j, m_, "decode_bit");
  const double t = canonical_angle(theta);
  const long idx = static_cast<long>(std::lround(t / step_)) % (2L * m_);
  if (angular_distance(theta_of_index(static_cast<int>(idx)), t) > 1e-6)
    throw InvalidParameter("decode_bit: phase is not on the constellation grid");
  if (static_cast<int>(idx) % m_ != key_j - 1)
    throw InvalidParameter("decode_bit: phase does not belong to the given basis");
  const int placement = static_cast<int>(idx) >= m_ ? 1 : 0;
  const int bprime = placement ^ (key_j & 1);
  return bprime ^ osk_value(osk_bit, "decode_bit");
}

QndmConstellation QndmConstellation::build(int m_bases, double amplitude) {
  if (m_bases < 2) throw InvalidParameter("build_qndm: M must be at least 2");
  if (!(amplitude > 0.0)) throw InvalidParameter("build_qndm: amplitude must be positive");
  QndmConstellation c;
  c.m_ = m_bases;
  c.amplitude_ = amplitude;
  c.base_step_ = kPi / static_cast<double>(m_bases);
  c.delta_ = c.base_step_ / static_cast<double>(m_bases);
  const std::size_t total = 2u * static_cast<std::size_t>(m_bases) * static_cast<std::size_t>(m_bases);
  c.points_.resize(total);
  for (std::size_t g = 0; g < total; ++g) c.points_[g] = c.labels_of_index(static_cast<int>(g));
  return c;
}

double QndmConstellation::theta_of_index(int index) const {
  const int half = m_ * m_;
  if (index < half) {
    const int bl = index / m_;
    const int slot = index % m_;
    return static_cast<double>(bl) * base_step_ + static_cast<double>(slot) * delta_;
  }
  return canonical_angle(theta_of_index(index - half) + kPi);
}

LabeledPhase QndmConstellation::labels_of_index(int index) const {
  const int half = m_ * m_;
  const int bl = index / m_;     // block 0..2M-1
  const int slot = index % m_;   // fine position, equals k1-1 in every block
  const int bl0 = bl % m_;       // pattern offset (k2 - k1) mod M
  LabeledPhase p;
  p.theta = theta_of_index(index);
  p.k1 = slot + 1;
  p.k2 = (slot + bl0) % m_ + 1;
  // Placement follows the parity of K^{R1}: adjacent fine slots carry
  // opposite bits, and every block of a half shares the same (k1, bit) set.
  const int placement = index >= half ? 1 : 0;
  p.bit = placement ^ (p.k1 & 1);
  return p;
}

int QndmConstellation::encode_index(int k1, int k2, int bit, std::optional<int> osk_bit) const {
  require_key(k1, m_, "encode_qndm_phase(k1)");
  require_key(k2, m_, "encode_qndm_phase(k2)");
  require_bit(bit, "encode_qndm_phase");
  const int bprime = bit ^ osk_value(osk_bit, "encode_qndm_phase");
  const int placement = bprime ^ (k1 & 1);
  const int bl0 = ((k2 - k1) % m_ + m_) % m_;
  return (bl0 + m_ * placement) * m_ + (k1 - 1);
}

PhasePoint QndmConstellation::encode_phase(int k1, int k2, int bit,
                                           std::optional<int> osk_bit) const {
  return PhasePoint(theta_of_index(encode_index(k1, k2, bit, osk_bit)), amplitude_);
}

PhasePoint QndmConstellation::encode_phase(int k1, int k2, int bit, const OskConfig& osk,
                                           std::optional<int> osk_bit) const {
  require_osk_config(osk, osk_bit, "encode_qndm_phase");
  return encode_phase(k1, k2, bit, osk_bit);
}

DsrConfig DsrConfig::validated(double strength, double amplitude, double sigma_he) {
  if (!(amplitude > 0.0)) throw InvalidParameter("DsrConfig: amplitude must be positive");
  if (!(sigma_he > 0.0)) throw InvalidParameter("DsrConfig: sigma must be positive");
  if (sigma_he * strength < 1.0 || sigma_he * strength > 0.5 * kPi * amplitude)
    throw InvalidParameter("DsrConfig: require 1 <= sigma_he * |R_p| <= pi |alpha| / 2");
  DsrConfig c;
  c.strength = strength;
  return c;
}

PhasePoint apply_dsr(const PhasePoint& point, const DsrConfig& config,
                     const std::function<double()>& uniform01) {
  const double half_width = config.strength / point.amplitude;
  const double u = uniform01();
  return PhasePoint(canonical_angle(point.theta + (2.0 * u - 1.0) * half_width), point.amplitude);
}

MaskingReport masking_metrics(int m_bases, double amplitude, double fine_spacing,
                              int points_per_block, double sigma, double lambda) {
  if (m_bases < 1 || !(amplitude > 0.0) || !(fine_spacing > 0.0) || points_per_block < 1)
    throw InvalidParameter("masking_metrics: invalid constellation parameters");
  if (sigma < 0.0) throw InvalidParameter("masking_metrics: sigma must be non-negative");
  MaskingReport r;
  r.lambda = lambda;
  r.gamma_q = static_cast<double>(m_bases) * sigma / (kPi * amplitude);
  // Arc-length comparison: masked span sigma vs fine-point arc |alpha| * spacing.
  r.masked_points = static_cast<std::uint64_t>(std::floor(sigma / (amplitude * fine_spacing)));
  r.condition_met =
      r.masked_points >= static_cast<std::uint64_t>(lambda * static_cast<double>(points_per_block));
  return r;
}

MaskingReport masking_metrics(const QndmConstellation& c, double sigma, double lambda) {
  return masking_metrics(c.bases(), c.amplitude(), c.delta(), c.points_per_block(), sigma, lambda);
}

MaskingReport masking_metrics(const Y00Constellation& c, double sigma, double lambda) {
  return masking_metrics(c.bases(), c.amplitude(), c.step(), 1, sigma, lambda);
}

}  // namespace qsc
