// Copyright 2026 The qrelkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrelkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr Complex kI{0.0, 1.0};

// Malformed input, shape mismatch or violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The object is well formed but lacks a property the operation needs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

// One line of a certificate: a claimed identity between two sides.
struct Claim {
  std::string claim;
  int lhs_dim = 0;
  int rhs_dim = 0;
  double residual = 0.0;
  bool holds = true;
};

// Row-major vectorization, so vec(A X B) = kron(A, B^T) vec(X).
inline Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, "unvec: length does not match shape");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Scale-aware residual: |a - b| measured against max(1, |a|, |b|).
inline double rel_residual(const Matrix& a, const Matrix& b) {
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  return max_abs(a - b) / scale;
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double min_eigenvalue(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// h^s for Hermitian positive definite h.
inline Matrix hermitian_power(const Matrix& h, double s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  Vector d(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 1e-14 * std::max(top, 1e-300))
      throw InputError("hermitian_power: matrix is not positive definite");
    d(i) = std::pow(ev(i), s);
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// Orthonormal basis of the column span. Singular values at or below
// tol * max(sigma_max, scale) are treated as zero; scale lets callers
// supply the natural magnitude of the inputs so that columns which
// vanish up to rounding yield the zero space.
inline Matrix orthonormal_range(const Matrix& cols, double tol, double scale = 0.0) {
  if (cols.cols() == 0 || cols.rows() == 0) return Matrix(cols.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s(0) : 0.0, scale);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

// Orthonormal basis of {x : a x = 0}; singular values at or below
// tol * max(sigma_max, scale) count as zero.
inline Matrix nullspace(const Matrix& a, double tol, double scale = 0.0) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return identity(n);
  // JacobiSVD throughout: Eigen 3.4.0's BDCSVD returns wrong singular
  // vectors for some rank-deficient triangular inputs.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s(0) : 0.0, scale);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut && s(rank) > 0.0) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

// Moore-Penrose pseudo-inverse with a relative rank cut.
inline Matrix pseudo_inverse(const Matrix& a, double tol) {
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double cut = tol * (s.size() ? s(0) : 0.0);
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut && s(i) > 0.0) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Projection onto the range of a positive semidefinite matrix.
inline Matrix support_projection(const Matrix& h, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  Matrix p = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * top)
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

}  // namespace qrelkit
