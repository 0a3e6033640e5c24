// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qsc {

enum class ReceiverKind { kHomodyne, kHeterodyne };

/// Semiclassical Gaussian receiver: homodyne measures one quadrature with
/// variance 1/4, heterodyne measures both with total variance 1.
struct ReceiverModel {
  ReceiverKind kind = ReceiverKind::kHomodyne;
  double sigma_sq = 0.25;

  static ReceiverModel homodyne() { return {ReceiverKind::kHomodyne, 0.25}; }
  static ReceiverModel heterodyne() { return {ReceiverKind::kHeterodyne, 1.0}; }

  double sigma() const;
  /// Standard deviation of each sampled quadrature (1/2 homodyne,
  /// sqrt(1/2) per heterodyne quadrature).
  double quadrature_sigma() const;
};

/// Gaussian tail Q(y) = (1/sqrt(2 pi)) int_y^inf exp(-t^2/2) dt.
/// Anchors: Q(-inf) = 1, Q(0) = 1/2, Q(inf) = 0.
double tail_q(double y);

/// Keyed homodyne bit error Q(|alpha| / sigma_ho) = Q(2 |alpha|).
double bob_error(double amplitude);

enum class SpacingMode { kY00, kQndm };

/// Keyless heterodyne M-ary symbol error for one masking block,
/// 2 (M-1)/M * Q(Delta / (2 sigma_he)) with Delta = sqrt(2) |alpha|
/// sqrt(1 - cos delta); delta = pi/M (Y-00) or 2 pi/M^2 (QNDM).
/// Clipped to the uniform-guess ceiling [0, 1 - 1/M].
double eve_error_mary(int m, double amplitude, SpacingMode mode);

/// Per-wrong-symbol probability of the uniform-error channel model,
/// epsilon = 2 Q(Delta / (2 sigma_he)) / M.
double eve_symbol_epsilon(int m, double amplitude, SpacingMode mode);

/// M-ary channel with uniform error: correct with 1-(M-1) eps, each wrong
/// symbol with eps.
struct UniformChannelSpec {
  int m = 2;
  double epsilon = 0.0;

  UniformChannelSpec(int m_in, double epsilon_in);
};

/// C1 = log2 M - [(1-(M-1)e) log2 1/(1-(M-1)e) + (M-1)e log2 1/e], 0 log 0 = 0.
double capacity_uniform(const UniformChannelSpec& spec);

/// Heterodyne capacity under DSR in the wedge approximation,
/// C = log2(pi |alpha| / (2 |R_p|)), clamped at 0.
double dsr_capacity(double amplitude, double r_p);

}  // namespace qsc
