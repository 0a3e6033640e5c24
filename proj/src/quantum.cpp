// SPDX-License-Identifier: Apache-2.0
#include "qsc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsc/angles.hpp"
#include "qsc/errors.hpp"

namespace qsc {

namespace {

constexpr double kPriorSumTol = 1e-12;

void require_prior(double xi, const char* who) {
  if (!(xi > 0.0) || !(xi < 1.0)) throw InvalidParameter(std::string(who) + ": xi outside (0,1)");
}

void require_common_basis(const SpanOperator& a, const SpanOperator& b, const char* who) {
  if (!a.basis || !b.basis || a.basis->dim() != b.basis->dim() ||
      a.matrix.rows() != b.matrix.rows())
    throw InvalidParameter(std::string(who) + ": operators must live on a common span");
}

void require_density(const SpanOperator& rho, const char* who) {
  if (!rho.is_hermitian()) throw InvalidParameter(std::string(who) + ": operator not Hermitian");
  if (std::fabs(rho.trace_real() - 1.0) > 1e-10)
    throw InvalidParameter(std::string(who) + ": trace differs from 1");
}

}  // namespace

cxd coherent_overlap(cxd a, cxd b) {
  return std::exp(cxd(-0.5 * std::norm(a) - 0.5 * std::norm(b), 0.0) + std::conj(a) * b);
}

PureStateEnsemble::PureStateEnsemble(std::vector<cxd> amps, std::vector<double> pri)
    : amplitudes(std::move(amps)), priors(std::move(pri)) {
  if (amplitudes.empty() || amplitudes.size() != priors.size())
    throw InvalidParameter("PureStateEnsemble: amplitude/prior lists must match and be non-empty");
  double sum = 0.0;
  for (double p : priors) {
    if (!(p > 0.0)) throw InvalidParameter("PureStateEnsemble: priors must be strictly positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kPriorSumTol)
    throw InvalidParameter("PureStateEnsemble: priors must sum to 1");
}

PureStateEnsemble PureStateEnsemble::uniform_psk(std::size_t n, double amplitude) {
  if (n == 0) throw InvalidParameter("uniform_psk: empty constellation");
  if (!(amplitude > 0.0)) throw InvalidParameter("uniform_psk: amplitude must be positive");
  std::vector<cxd> amps(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    amps[k] = amplitude * cxd(std::cos(th), std::sin(th));
  }
  return PureStateEnsemble(std::move(amps), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

CMatrix gram_matrix(const PureStateEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      g(i, j) = coherent_overlap(ensemble.amplitudes[i], ensemble.amplitudes[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

std::shared_ptr<const SpanBasis> SpanBasis::build(const PureStateEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  HermitianEigen eig = hermitian_eigen(gram_matrix(ensemble));

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (eig.values[i] >= kRankTolerance) keep.push_back(i);
  if (keep.empty()) throw NumericalError("SpanBasis: Gram matrix numerically zero");

  auto basis = std::make_shared<SpanBasis>();
  basis->dim_ = keep.size();
  basis->coords_ = CMatrix(keep.size(), n);
  basis->srm_ = CMatrix(keep.size(), n);
  // |alpha_m> = sum_i sqrt(l_i) conj(V_mi) |e_i>, mu_m = sum_i conj(V_mi) |e_i>.
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const std::size_t i = keep[r];
    const double root = std::sqrt(eig.values[i]);
    for (std::size_t m = 0; m < n; ++m) {
      const cxd v = std::conj(eig.vectors(m, i));
      basis->coords_(r, m) = root * v;
      basis->srm_(r, m) = v;
    }
  }
  return basis;
}

std::vector<cxd> SpanBasis::state(std::size_t m) const {
  std::vector<cxd> v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = coords_(i, m);
  return v;
}

CMatrix SpanBasis::density(std::size_t m) const {
  CMatrix rho(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) rho(i, j) = coords_(i, m) * std::conj(coords_(j, m));
  return rho;
}

std::vector<cxd> SpanBasis::srm_vector(std::size_t m) const {
  std::vector<cxd> v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = srm_(i, m);
  return v;
}

bool SpanOperator::is_hermitian(double tol) const { return hermitian_deviation(matrix) <= tol; }

double SpanOperator::min_eig() const { return min_eigenvalue(matrix); }

double SpanOperator::trace_real() const { return trace(matrix).real(); }

SpanOperator uniform_mixture(const std::shared_ptr<const SpanBasis>& basis,
                             const std::vector<std::size_t>& idx) {
  if (!basis || idx.empty()) throw InvalidParameter("uniform_mixture: empty input");
  CMatrix acc(basis->dim(), basis->dim());
  for (std::size_t m : idx) acc += basis->density(m);
  acc *= cxd(1.0 / static_cast<double>(idx.size()), 0.0);
  return {std::move(acc), basis};
}

double Povm::completeness_residual() const {
  if (elements.empty()) return 1.0;
  CMatrix sum(elements.front().rows(), elements.front().cols());
  for (const auto& e : elements) sum += e;
  sum -= CMatrix::identity(sum.rows());
  double r = 0.0;
  for (const auto& v : sum.data()) r = std::max(r, std::abs(v));
  return r;
}

double Povm::positivity_violation() const {
  double worst = 0.0;
  for (const auto& e : elements) worst = std::min(worst, min_eigenvalue(e));
  return -worst;
}

Povm srm_povm(const PureStateEnsemble& ensemble) { return srm_povm(SpanBasis::build(ensemble)); }

Povm srm_povm(const std::shared_ptr<const SpanBasis>& basis) {
  if (!basis) throw InvalidParameter("srm_povm: null basis");
  Povm povm;
  povm.basis = basis;
  const std::size_t r = basis->dim();
  povm.elements.reserve(basis->state_count());
  for (std::size_t m = 0; m < basis->state_count(); ++m) {
    std::vector<cxd> mu = basis->srm_vector(m);
    CMatrix e(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) e(i, j) = mu[i] * std::conj(mu[j]);
    povm.elements.push_back(std::move(e));
  }
  return povm;
}

double ChannelMatrix::row_sum(std::size_t m) const {
  double s = 0.0;
  for (std::size_t l = 0; l < outputs; ++l) s += (*this)(m, l);
  return s;
}

ChannelMatrix srm_channel(const PureStateEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  CMatrix g = gram_matrix(ensemble);
  HermitianEigen eig = hermitian_eigen(g);

  ChannelMatrix ch;
  ch.inputs = ch.outputs = n;
  ch.p.assign(n * n, 0.0);
  ch.span_rank = 0;
  for (double v : eig.values)
    if (v >= SpanBasis::kRankTolerance) ++ch.span_rank;
  ch.rank_deficient = ch.span_rank < n;

  CMatrix root = hermitian_sqrt_psd(g);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l) {
      double v = std::norm(root(m, l));
      ch.p[m * n + l] = std::clamp(v, 0.0, 1.0);
    }
  return ch;
}

ChannelMatrix channel_from_povm(const PureStateEnsemble& ensemble, const Povm& povm) {
  if (!povm.basis || povm.basis->state_count() != ensemble.size())
    throw InvalidParameter("channel_from_povm: POVM basis does not match ensemble");
  const std::size_t n = ensemble.size();
  const std::size_t l_count = povm.elements.size();
  ChannelMatrix ch;
  ch.inputs = n;
  ch.outputs = l_count;
  ch.p.assign(n * l_count, 0.0);
  ch.span_rank = povm.basis->dim();
  ch.rank_deficient = povm.basis->rank_deficient();
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<cxd> c = povm.basis->state(m);
    for (std::size_t l = 0; l < l_count; ++l) {
      const CMatrix& e = povm.elements[l];
      cxd acc = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        cxd row = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) row += e(i, j) * c[j];
        acc += std::conj(c[i]) * row;
      }
      ch.p[m * l_count + l] = std::clamp(acc.real(), 0.0, 1.0);
    }
  }
  return ch;
}

double srm_error_covariant(std::size_t n, const std::vector<cxd>& first_row_overlaps) {
  if (n < 1 || first_row_overlaps.size() != n)
    throw InvalidParameter("srm_error_covariant: need the full first Gram row");
  if (std::abs(first_row_overlaps[0] - cxd(1.0, 0.0)) > 1e-9)
    throw InvalidParameter("srm_error_covariant: states must be normalized (c_0 = 1)");
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs(first_row_overlaps[k] - std::conj(first_row_overlaps[n - k])) > 1e-9)
      throw InvalidParameter("srm_error_covariant: row is not Hermitian-circulant");

  // DFT eigenvalues of the circulant Gram matrix, n-point kernel.
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
  long double sum_roots = 0.0L;
  for (std::size_t m = 0; m < n; ++m) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double ang = -step * static_cast<long double>(k * m % n);
      const long double cr = first_row_overlaps[k].real();
      const long double ci = first_row_overlaps[k].imag();
      re += cr * std::cos(ang) - ci * std::sin(ang);
      im += cr * std::sin(ang) + ci * std::cos(ang);
    }
    if (std::fabs(static_cast<double>(im)) > 1e-8)
      throw NumericalError("srm_error_covariant: eigenvalue not real");
    if (re < -1e-10L) throw NumericalError("srm_error_covariant: negative Gram eigenvalue");
    if (re > 0.0L) sum_roots += std::sqrt(re);
  }
  const long double mean = sum_roots / static_cast<long double>(n);
  double err = static_cast<double>(1.0L - mean * mean);
  return std::clamp(err, 0.0, 1.0);
}

double helstrom_binary_pure(double kappa_sq, double xi) {
  if (kappa_sq < 0.0 || kappa_sq > 1.0)
    throw InvalidParameter("helstrom_binary_pure: kappa_sq outside [0,1]");
  require_prior(xi, "helstrom_binary_pure");
  const double disc = 1.0 - 4.0 * xi * (1.0 - xi) * kappa_sq;
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, disc)));
}

double helstrom_binary_mixed(const SpanOperator& rho0, const SpanOperator& rho1, double xi) {
  require_common_basis(rho0, rho1, "helstrom_binary_mixed");
  require_density(rho0, "helstrom_binary_mixed(rho0)");
  require_density(rho1, "helstrom_binary_mixed(rho1)");
  require_prior(xi, "helstrom_binary_mixed");
  CMatrix diff = rho1.matrix;
  diff *= cxd(xi, 0.0);
  CMatrix other = rho0.matrix;
  other *= cxd(1.0 - xi, 0.0);
  diff -= other;
  return 0.5 * (1.0 - trace_norm_hermitian(diff));
}

Povm helstrom_binary_povm(const SpanOperator& rho0, const SpanOperator& rho1, double xi) {
  require_common_basis(rho0, rho1, "helstrom_binary_povm");
  require_prior(xi, "helstrom_binary_povm");
  CMatrix diff = rho1.matrix;
  diff *= cxd(xi, 0.0);
  CMatrix other = rho0.matrix;
  other *= cxd(1.0 - xi, 0.0);
  diff -= other;
  HermitianEigen eig = hermitian_eigen(diff);
  const std::size_t r = diff.rows();
  CMatrix plus(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    if (eig.values[k] <= 0.0) continue;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        plus(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  Povm povm;
  povm.basis = rho0.basis;
  povm.elements.resize(2);
  povm.elements[1] = plus;
  povm.elements[0] = CMatrix::identity(r) - plus;
  return povm;
}

namespace {

// gamma = sum_l xi_l rho_l Pi_l, Hermitian-symmetrized.
CMatrix lagrange_operator(const PureStateEnsemble& ensemble, const Povm& povm) {
  const std::size_t r = povm.basis->dim();
  const std::size_t terms = std::min(ensemble.size(), povm.elements.size());
  CMatrix gamma(r, r);
  for (std::size_t l = 0; l < terms; ++l) {
    CMatrix term = matmul(povm.basis->density(l), povm.elements[l]);
    term *= cxd(ensemble.priors[l], 0.0);
    gamma += term;
  }
  CMatrix sym = adjoint(gamma);
  sym += gamma;
  sym *= cxd(0.5, 0.0);
  return sym;
}

void require_povm_match(const PureStateEnsemble& ensemble, const Povm& povm, const char* who) {
  if (!povm.basis) throw InvalidParameter(std::string(who) + ": POVM lacks a span basis");
  if (povm.basis->state_count() != ensemble.size())
    throw InvalidParameter(std::string(who) + ": POVM basis does not match ensemble");
  if (povm.elements.empty()) throw InvalidParameter(std::string(who) + ": POVM has no elements");
}

}  // namespace

BayesResidual verify_bayes_conditions(const PureStateEnsemble& ensemble, const Povm& povm) {
  require_povm_match(ensemble, povm, "verify_bayes_conditions");
  const std::size_t n = ensemble.size();
  const std::size_t k = povm.elements.size();

  std::vector<CMatrix> weighted(n);
  for (std::size_t m = 0; m < n; ++m) {
    weighted[m] = povm.basis->density(m);
    weighted[m] *= cxd(ensemble.priors[m], 0.0);
  }

  BayesResidual res;
  for (std::size_t m = 0; m < std::min(n, k); ++m)
    for (std::size_t l = 0; l < std::min(n, k); ++l) {
      if (l == m) continue;
      CMatrix mid = weighted[m] - weighted[l];
      CMatrix prod = matmul(matmul(povm.elements[m], mid), povm.elements[l]);
      res.offdiag = std::max(res.offdiag, spectral_norm(prod));
    }

  CMatrix gamma = lagrange_operator(ensemble, povm);
  for (std::size_t l = 0; l < n; ++l) {
    CMatrix g = gamma;
    g -= weighted[l];
    res.positivity = std::max(res.positivity, -min_eigenvalue(g));
  }
  return res;
}

std::vector<double> correct_probabilities(const PureStateEnsemble& ensemble, const Povm& povm) {
  require_povm_match(ensemble, povm, "correct_probabilities");
  ChannelMatrix ch = channel_from_povm(ensemble, povm);
  const std::size_t n = std::min<std::size_t>(ch.inputs, ch.outputs);
  std::vector<double> out(n);
  for (std::size_t l = 0; l < n; ++l) out[l] = ch(l, l);
  return out;
}

MinimaxResidual verify_minimax_conditions(const PureStateEnsemble& ensemble, const Povm& povm) {
  MinimaxResidual res;
  res.bayes = verify_bayes_conditions(ensemble, povm);
  std::vector<double> correct = correct_probabilities(ensemble, povm);
  const auto [mn, mx] = std::minmax_element(correct.begin(), correct.end());
  res.spread = *mx - *mn;
  return res;
}

double verify_mi_condition(const PureStateEnsemble& ensemble, const Povm& povm) {
  require_povm_match(ensemble, povm, "verify_mi_condition");
  ChannelMatrix ch = channel_from_povm(ensemble, povm);
  const std::size_t n = ensemble.size();
  const std::size_t outs = ch.outputs;
  const std::size_t r = povm.basis->dim();

  std::vector<double> q(outs, 0.0);
  for (std::size_t j = 0; j < outs; ++j)
    for (std::size_t l = 0; l < n; ++l) q[j] += ensemble.priors[l] * ch(l, j);

  std::vector<CMatrix> f(outs, CMatrix(r, r));
  for (std::size_t j = 0; j < outs; ++j) {
    if (q[j] <= 0.0) continue;
    for (std::size_t l = 0; l < n; ++l) {
      const double pjl = ch(l, j);
      if (pjl <= 0.0) continue;  // zero-probability outputs stay out of the sum
      CMatrix term = povm.basis->density(l);
      term *= cxd(ensemble.priors[l] * std::log(pjl / q[j]), 0.0);
      f[j] += term;
    }
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < outs; ++j)
    for (std::size_t i = 0; i < outs; ++i) {
      if (i == j) continue;
      CMatrix mid = f[j] - f[i];
      CMatrix prod = matmul(matmul(povm.elements[j], mid), povm.elements[i]);
      residual = std::max(residual, spectral_norm(prod));
    }
  return residual;
}

double holevo_information(const PureStateEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  CMatrix g = gram_matrix(ensemble);
  // D^{1/2} G D^{1/2} shares the nonzero spectrum of rho_T = sum xi |a><a|.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) *= std::sqrt(ensemble.priors[i]) * std::sqrt(ensemble.priors[j]);
  HermitianEigen eig = hermitian_eigen(g);
  double h = 0.0;
  for (double v : eig.values)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double mutual_information(const ChannelMatrix& channel, const std::vector<double>& priors) {
  if (priors.size() != channel.inputs)
    throw InvalidParameter("mutual_information: prior count does not match channel inputs");
  std::vector<double> q(channel.outputs, 0.0);
  for (std::size_t m = 0; m < channel.inputs; ++m)
    for (std::size_t l = 0; l < channel.outputs; ++l) q[l] += priors[m] * channel(m, l);
  double mi = 0.0;
  for (std::size_t m = 0; m < channel.inputs; ++m)
    for (std::size_t l = 0; l < channel.outputs; ++l) {
      const double p = channel(m, l);
      if (p > 0.0 && q[l] > 0.0) mi += priors[m] * p * std::log2(p / q[l]);
    }
  return std::max(0.0, mi);
}

double psk_parity_mixture_error(std::size_t m_bases, double amplitude) {
  if (m_bases < 1) throw InvalidParameter("psk_parity_mixture_error: M must be positive");
  if (!(amplitude > 0.0))
    throw InvalidParameter("psk_parity_mixture_error: amplitude must be positive");
  const std::size_t n = 2 * m_bases;
  PureStateEnsemble psk = PureStateEnsemble::uniform_psk(n, amplitude);
  CMatrix g = gram_matrix(psk);

  // Circulant eigenvalues via the n-point DFT of the first row.
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
  std::vector<long double> lambda(n, 0.0L);
  for (std::size_t m = 0; m < n; ++m) {
    long double re = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double ang = -step * static_cast<long double>(k * m % n);
      re += static_cast<long double>(g(0, k).real()) * std::cos(ang) -
            static_cast<long double>(g(0, k).imag()) * std::sin(ang);
    }
    lambda[m] = std::max(0.0L, re);
  }
  // Alternating-sign mixture couples Fourier modes j and j+M pairwise.
  long double tn = 0.0L;
  for (std::size_t j = 0; j < n; ++j) tn += std::sqrt(lambda[j] * lambda[(j + m_bases) % n]);
  tn /= static_cast<long double>(n);
  return static_cast<double>(0.5L * (1.0L - tn));
}

std::pair<SpanOperator, SpanOperator> psk_parity_mixtures(std::size_t m_bases, double amplitude) {
  const std::size_t n = 2 * m_bases;
  auto basis = SpanBasis::build(PureStateEnsemble::uniform_psk(n, amplitude));
  std::vector<std::size_t> even, odd;
  for (std::size_t m = 0; m < n; ++m) (m % 2 == 0 ? even : odd).push_back(m);
  return {uniform_mixture(basis, even), uniform_mixture(basis, odd)};
}

}  // namespace qsc
