// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qsc {

using cxd = std::complex<double>;

/// Dense complex matrix, row-major. Sized for spans of signal state sets
/// (a few hundred rows at most), not for general-purpose linear algebra.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cxd>& data() const { return data_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cxd s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cxd s, CMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cxd> data_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
cxd trace(const CMatrix& a);

/// Largest entry-wise deviation from the conjugate transpose.
double hermitian_deviation(const CMatrix& a);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. Internally runs in extended
/// precision; the coherent-state Gram matrices this feeds on are severely
/// ill-conditioned and their small eigenvalues enter square roots.
HermitianEigen hermitian_eigen(const CMatrix& a);

/// Positive-semidefinite square root; eigenvalues below zero are clipped.
CMatrix hermitian_sqrt_psd(const CMatrix& a);

double trace_norm_hermitian(const CMatrix& a);
double min_eigenvalue(const CMatrix& a);

/// Largest singular value (works for non-Hermitian inputs).
double spectral_norm(const CMatrix& a);

}  // namespace qsc
