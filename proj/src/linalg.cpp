// SPDX-License-Identifier: Apache-2.0
#include "qsc/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

using cxl = std::complex<long double>;
using EigenMat = Eigen::Matrix<cxl, Eigen::Dynamic, Eigen::Dynamic>;

EigenMat to_eigen(const CMatrix& a) {
  EigenMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = cxl(a(i, j).real(), a(i, j).imag());
  return m;
}

CMatrix from_eigen(const EigenMat& m) {
  CMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      a(i, j) = cxd(static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag()));
  return a;
}

void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw InvalidParameter(std::string(who) + ": matrix must be square");
}

}  // namespace

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidParameter("CMatrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidParameter("CMatrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cxd s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidParameter("matmul: shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

cxd trace(const CMatrix& a) {
  require_square(a, "trace");
  cxd t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double hermitian_deviation(const CMatrix& a) {
  require_square(a, "hermitian_deviation");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
  return dev;
}

HermitianEigen hermitian_eigen(const CMatrix& a) {
  require_square(a, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(a));
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigen: solver failed");
  HermitianEigen out;
  out.values.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    out.values[i] = static_cast<double>(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
  out.vectors = from_eigen(solver.eigenvectors());
  return out;
}

CMatrix hermitian_sqrt_psd(const CMatrix& a) {
  require_square(a, "hermitian_sqrt_psd");
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(a));
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_sqrt_psd: solver failed");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  EigenMat s = EigenMat::Zero(vals.size(), vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    long double l = vals(i) > 0.0L ? vals(i) : 0.0L;
    s += std::sqrt(l) * vecs.col(i) * vecs.col(i).adjoint();
  }
  return from_eigen(s);
}

double trace_norm_hermitian(const CMatrix& a) {
  HermitianEigen e = hermitian_eigen(a);
  double n = 0.0;
  for (double v : e.values) n += std::fabs(v);
  return n;
}

double min_eigenvalue(const CMatrix& a) {
  HermitianEigen e = hermitian_eigen(a);
  return e.values.empty() ? 0.0 : e.values.front();
}

double spectral_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  CMatrix g = matmul(adjoint(a), a);  // Hermitian PSD
  HermitianEigen e = hermitian_eigen(g);
  double top = e.values.back();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

}  // namespace qsc
