// SPDX-License-Identifier: Apache-2.0
#include "qsc/receivers.hpp"

#include <algorithm>
#include <cmath>

#include "qsc/angles.hpp"
#include "qsc/errors.hpp"

namespace qsc {

double ReceiverModel::sigma() const { return std::sqrt(sigma_sq); }

double ReceiverModel::quadrature_sigma() const {
  return kind == ReceiverKind::kHomodyne ? 0.5 : std::sqrt(0.5);
}

double tail_q(double y) { return 0.5 * std::erfc(y / std::sqrt(2.0)); }

double bob_error(double amplitude) {
  if (amplitude < 0.0) throw InvalidParameter("bob_error: amplitude must be non-negative");
  return tail_q(2.0 * amplitude);  // sigma_ho = 1/2
}

namespace {

double neighbor_spacing(int m, SpacingMode mode) {
  if (mode == SpacingMode::kQndm)
    return kTwoPi / (static_cast<double>(m) * static_cast<double>(m));
  return kPi / static_cast<double>(m);
}

}  // namespace

double eve_error_mary(int m, double amplitude, SpacingMode mode) {
  if (m < 2) throw InvalidParameter("eve_error_mary: M must be at least 2");
  if (!(amplitude > 0.0)) throw InvalidParameter("eve_error_mary: amplitude must be positive");
  const double delta = neighbor_spacing(m, mode);
  const double dist = std::sqrt(2.0) * amplitude * std::sqrt(1.0 - std::cos(delta));
  const double raw = 2.0 * (static_cast<double>(m) - 1.0) / static_cast<double>(m) *
                     tail_q(0.5 * dist);  // sigma_he = 1
  return std::clamp(raw, 0.0, 1.0 - 1.0 / static_cast<double>(m));
}

double eve_symbol_epsilon(int m, double amplitude, SpacingMode mode) {
  if (m < 2) throw InvalidParameter("eve_symbol_epsilon: M must be at least 2");
  if (!(amplitude > 0.0)) throw InvalidParameter("eve_symbol_epsilon: amplitude must be positive");
  const double delta = neighbor_spacing(m, mode);
  const double dist = std::sqrt(2.0) * amplitude * std::sqrt(1.0 - std::cos(delta));
  return 2.0 * tail_q(0.5 * dist) / static_cast<double>(m);
}

UniformChannelSpec::UniformChannelSpec(int m_in, double epsilon_in) : m(m_in), epsilon(epsilon_in) {
  if (m < 2) throw InvalidParameter("UniformChannelSpec: M must be at least 2");
  if (epsilon < 0.0) throw InvalidParameter("UniformChannelSpec: epsilon must be non-negative");
  if ((static_cast<double>(m) - 1.0) * epsilon > 1.0 + 1e-12)
    throw InvalidParameter("UniformChannelSpec: (M-1) epsilon exceeds 1");
}

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double capacity_uniform(const UniformChannelSpec& spec) {
  const double m = static_cast<double>(spec.m);
  const double correct = 1.0 - (m - 1.0) * spec.epsilon;
  const double row_entropy = -xlog2x(correct) - (m - 1.0) * xlog2x(spec.epsilon);
  return std::max(0.0, std::log2(m) - row_entropy);
}

double dsr_capacity(double amplitude, double r_p) {
  if (!(amplitude > 0.0)) throw InvalidParameter("dsr_capacity: amplitude must be positive");
  // DSR operating range with sigma_he = 1; the upper endpoint is allowed
  // and yields exactly zero capacity.
  if (r_p < 1.0 || r_p > 0.5 * kPi * amplitude + 1e-12)
    throw InvalidParameter("dsr_capacity: require 1 <= |R_p| <= pi |alpha| / 2");
  return std::max(0.0, std::log2(kPi * amplitude / (2.0 * r_p)));
}

}  // namespace qsc
