// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "qsc/linalg.hpp"

namespace qsc {

/// Inner product of two coherent states labelled by complex amplitudes:
/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b), so |<a|b>|^2 = exp(-|a-b|^2).
cxd coherent_overlap(cxd a, cxd b);

/// A finite set of pure coherent states with strictly positive priors.
struct PureStateEnsemble {
  std::vector<cxd> amplitudes;
  std::vector<double> priors;

  PureStateEnsemble(std::vector<cxd> amps, std::vector<double> pri);

  std::size_t size() const { return amplitudes.size(); }

  /// n states alpha e^{i 2 pi k / n} with uniform priors.
  static PureStateEnsemble uniform_psk(std::size_t n, double amplitude);
};

/// Gram matrix G_ij = <alpha_i|alpha_j>: Hermitian, PSD, unit diagonal.
CMatrix gram_matrix(const PureStateEnsemble& ensemble);

/// Orthonormal basis of span{|alpha_m>} obtained from the Gram eigensystem.
/// Eigenvalues below the rank tolerance are discarded; the retained dimension
/// is the numerical rank of the set.
class SpanBasis {
 public:
  static constexpr double kRankTolerance = 1e-12;

  static std::shared_ptr<const SpanBasis> build(const PureStateEnsemble& ensemble);

  std::size_t dim() const { return dim_; }
  std::size_t state_count() const { return coords_.cols(); }
  bool rank_deficient() const { return dim_ < state_count(); }

  /// Coordinates of state m in the orthonormal basis (column m).
  std::vector<cxd> state(std::size_t m) const;

  /// Rank-one density matrix |alpha_m><alpha_m| expressed in the basis.
  CMatrix density(std::size_t m) const;

  /// Square-root-measurement vector mu_m = H^{-1/2} |alpha_m> in the basis.
  std::vector<cxd> srm_vector(std::size_t m) const;

 private:
  std::size_t dim_ = 0;
  CMatrix coords_;  // dim x N, column m = coordinates of |alpha_m>
  CMatrix srm_;     // dim x N, column m = coordinates of mu_m
};

/// Operator restricted to the span, in the orthonormalized basis.
struct SpanOperator {
  CMatrix matrix;
  std::shared_ptr<const SpanBasis> basis;

  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kPositiveTol = -1e-10;

  bool is_hermitian(double tol = kHermitianTol) const;
  double min_eig() const;
  double trace_real() const;
};

/// Mixture (1/|idx|) sum over idx of |alpha_m><alpha_m| as a SpanOperator.
SpanOperator uniform_mixture(const std::shared_ptr<const SpanBasis>& basis,
                             const std::vector<std::size_t>& idx);

struct Povm {
  std::vector<CMatrix> elements;
  std::shared_ptr<const SpanBasis> basis;

  /// Max completeness residual |sum - I| and most negative element eigenvalue.
  double completeness_residual() const;
  double positivity_violation() const;
};

/// Square-root measurement Pi_m = |mu_m><mu_m| on the span of the ensemble.
Povm srm_povm(const PureStateEnsemble& ensemble);
Povm srm_povm(const std::shared_ptr<const SpanBasis>& basis);

struct ChannelMatrix {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> p;  // row-major P(l|m), row m sums to 1
  bool rank_deficient = false;
  std::size_t span_rank = 0;

  double operator()(std::size_t m, std::size_t l) const { return p[m * outputs + l]; }
  double row_sum(std::size_t m) const;
};

/// Channel of the square-root measurement: P(l|m) = |(G^{1/2})_{ml}|^2.
ChannelMatrix srm_channel(const PureStateEnsemble& ensemble);

/// Channel induced by an explicit POVM on the ensemble's span.
ChannelMatrix channel_from_povm(const PureStateEnsemble& ensemble, const Povm& povm);

/// Average SRM error for n covariant signals from the first Gram row:
/// P = 1 - (1/n^2) (sum_m sqrt(lambda_m))^2 with lambda_m the DFT eigenvalues
/// of the circulant Gram row (n-point kernel).
double srm_error_covariant(std::size_t n, const std::vector<cxd>& first_row_overlaps);

/// Binary pure-state Helstrom error: (1/2)[1 - sqrt(1 - 4 xi (1-xi) kappa^2)].
double helstrom_binary_pure(double kappa_sq, double xi);

/// Binary mixed-state Helstrom error (1/2)(1 - ||xi1 rho1 - xi0 rho0||_1),
/// with xi the prior of rho1.
double helstrom_binary_mixed(const SpanOperator& rho0, const SpanOperator& rho1, double xi);

/// Two-element Helstrom-optimal projective POVM for xi1 rho1 vs xi0 rho0.
/// elements[1] projects on the positive eigenspace of xi1 rho1 - xi0 rho0.
Povm helstrom_binary_povm(const SpanOperator& rho0, const SpanOperator& rho1, double xi);

struct BayesResidual {
  double offdiag = 0.0;     // max_{l,m} ||Pi_m (xi_m rho_m - xi_l rho_l) Pi_l||
  double positivity = 0.0;  // max_l of -lambda_min(gamma - xi_l rho_l)
};

BayesResidual verify_bayes_conditions(const PureStateEnsemble& ensemble, const Povm& povm);

struct MinimaxResidual {
  double spread = 0.0;  // max_l Tr rho_l Pi_l - min_l Tr rho_l Pi_l
  BayesResidual bayes;
};

MinimaxResidual verify_minimax_conditions(const PureStateEnsemble& ensemble, const Povm& povm);

/// Residual of the mutual-information stationarity condition
/// max_{i,j} ||Pi_j (F_j - F_i) Pi_i||, with
/// F_j = sum_l xi_l rho_l log[P(j|l) / sum_k xi_k P(j|k)] (zero-probability
/// outputs excluded from the sums).
double verify_mi_condition(const PureStateEnsemble& ensemble, const Povm& povm);

/// Holevo information in bits; for pure states this is S(rho_T), the Shannon
/// entropy of the eigenvalues of D^{1/2} G D^{1/2} with D = diag(priors).
double holevo_information(const PureStateEnsemble& ensemble);

/// Discrete mutual information in bits for a channel and input priors.
double mutual_information(const ChannelMatrix& channel, const std::vector<double>& priors);

/// Conditional correct probabilities Tr rho_l Pi_l for each l.
std::vector<double> correct_probabilities(const PureStateEnsemble& ensemble, const Povm& povm);

/// Exact binary error for equiprobable even/odd-index mixtures of a 2M-point
/// PSK ring, via the circulant pairing of Gram eigenvalues:
/// P = (1/2)(1 - (1/2M) sum_j sqrt(lambda_j lambda_{j+M})).
double psk_parity_mixture_error(std::size_t m_bases, double amplitude);

/// Even/odd-index mixtures of the 2M PSK ring as span operators (shared basis).
std::pair<SpanOperator, SpanOperator> psk_parity_mixtures(std::size_t m_bases, double amplitude);

}  // namespace qsc
