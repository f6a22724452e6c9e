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

// Multimatrix algebras M = (+)_a M_{n(a)}, their normal representations,
// faithful functionals and GNS coordinates.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrelkit/common.hpp"

namespace qrelkit {

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {}

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int a) const { return blocks_.at(a); }
  Matrix& block(int a) { return blocks_.at(a); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement adjoint() const {
    std::vector<Matrix> out;
    for (const auto& b : blocks_) out.push_back(b.adjoint());
    return AlgebraElement(std::move(out));
  }

  AlgebraElement transpose() const {
    std::vector<Matrix> out;
    for (const auto& b : blocks_) out.push_back(b.transpose());
    return AlgebraElement(std::move(out));
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& b : blocks_) m = std::max(m, qrelkit::max_abs(b));
    return m;
  }

  bool same_shape(const AlgebraElement& o) const {
    if (o.num_blocks() != num_blocks()) return false;
    for (int a = 0; a < num_blocks(); ++a)
      if (o.block(a).rows() != block(a).rows() || o.block(a).cols() != block(a).cols()) return false;
    return true;
  }

 private:
  std::vector<Matrix> blocks_;
};

namespace detail {
template <typename F>
AlgebraElement zip(const AlgebraElement& x, const AlgebraElement& y, F f) {
  require(x.same_shape(y), "algebra element shape mismatch");
  std::vector<Matrix> out;
  for (int a = 0; a < x.num_blocks(); ++a) out.push_back(f(x.block(a), y.block(a)));
  return AlgebraElement(std::move(out));
}
}  // namespace detail

inline AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  return detail::zip(x, y, [](const Matrix& a, const Matrix& b) -> Matrix { return a + b; });
}
inline AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  return detail::zip(x, y, [](const Matrix& a, const Matrix& b) -> Matrix { return a - b; });
}
inline AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  return detail::zip(x, y, [](const Matrix& a, const Matrix& b) -> Matrix { return a * b; });
}
inline AlgebraElement operator*(Complex s, const AlgebraElement& x) {
  std::vector<Matrix> out;
  for (const auto& b : x.blocks()) out.push_back(s * b);
  return AlgebraElement(std::move(out));
}

class MultiMatrixAlgebra {
 public:
  struct Index {
    int block;
    int row;
    int col;
  };

  MultiMatrixAlgebra() = default;
  explicit MultiMatrixAlgebra(std::vector<int> blocks, std::vector<std::string> labels = {})
      : blocks_(std::move(blocks)), labels_(std::move(labels)) {
    require(!blocks_.empty(), "algebra needs at least one block");
    for (int n : blocks_) require(n >= 1, "block sizes must be positive");
    require(labels_.empty() || labels_.size() == blocks_.size(), "one label per block");
    int c = 0, r = 0;
    for (int n : blocks_) {
      coord_offsets_.push_back(c);
      row_offsets_.push_back(r);
      c += n * n;
      r += n;
    }
    dim_ = c;
    unit_dim_ = r;
  }

  const std::vector<int>& blocks() const { return blocks_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_size(int a) const { return blocks_.at(a); }
  // Vector-space dimension, sum of n(a)^2.
  int dim() const { return dim_; }
  // Size of the block-diagonal matrices, sum of n(a).
  int unit_dim() const { return unit_dim_; }
  int coord_offset(int a) const { return coord_offsets_.at(a); }
  int row_offset(int a) const { return row_offsets_.at(a); }

  bool is_commutative() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n == 1; });
  }
  bool operator==(const MultiMatrixAlgebra& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const MultiMatrixAlgebra& o) const { return !(*this == o); }

  bool contains_shape(const AlgebraElement& x) const {
    if (x.num_blocks() != num_blocks()) return false;
    for (int a = 0; a < num_blocks(); ++a)
      if (x.block(a).rows() != blocks_[a] || x.block(a).cols() != blocks_[a]) return false;
    return true;
  }
  void check(const AlgebraElement& x) const {
    require(contains_shape(x), "element does not belong to this algebra");
  }

  AlgebraElement zero() const {
    std::vector<Matrix> out;
    for (int n : blocks_) out.push_back(Matrix::Zero(n, n));
    return AlgebraElement(std::move(out));
  }
  AlgebraElement one() const {
    std::vector<Matrix> out;
    for (int n : blocks_) out.push_back(Matrix::Identity(n, n));
    return AlgebraElement(std::move(out));
  }
  AlgebraElement block_unit(int a) const {
    AlgebraElement x = zero();
    x.block(a) = Matrix::Identity(blocks_.at(a), blocks_.at(a));
    return x;
  }
  AlgebraElement matrix_unit(int a, int i, int j) const {
    AlgebraElement x = zero();
    x.block(a)(i, j) = 1.0;
    return x;
  }

  Index index_of(int k) const {
    require(k >= 0 && k < dim_, "basis index out of range");
    int a = num_blocks() - 1;
    while (coord_offsets_[a] > k) --a;
    const int local = k - coord_offsets_[a];
    return {a, local / blocks_[a], local % blocks_[a]};
  }
  // Matrix units in coordinate order.
  AlgebraElement basis(int k) const {
    const Index ix = index_of(k);
    return matrix_unit(ix.block, ix.row, ix.col);
  }
  std::vector<AlgebraElement> basis_elements() const {
    std::vector<AlgebraElement> out;
    for (int k = 0; k < dim_; ++k) out.push_back(basis(k));
    return out;
  }

  // Block units and nearest-neighbour matrix units; they generate M as a
  // *-algebra, which is enough for commutation and intertwining equations.
  std::vector<AlgebraElement> generators() const {
    std::vector<AlgebraElement> out;
    for (int a = 0; a < num_blocks(); ++a) {
      out.push_back(block_unit(a));
      for (int i = 0; i + 1 < blocks_[a]; ++i) {
        out.push_back(matrix_unit(a, i, i + 1));
        out.push_back(matrix_unit(a, i + 1, i));
      }
    }
    return out;
  }

  Vector coords(const AlgebraElement& x) const {
    check(x);
    Vector v(dim_);
    for (int a = 0; a < num_blocks(); ++a)
      v.segment(coord_offsets_[a], blocks_[a] * blocks_[a]) = vec(x.block(a));
    return v;
  }
  AlgebraElement element(const Vector& v) const {
    require(v.size() == dim_, "coordinate vector has wrong length");
    std::vector<Matrix> out;
    for (int a = 0; a < num_blocks(); ++a)
      out.push_back(unvec(v.segment(coord_offsets_[a], blocks_[a] * blocks_[a]), blocks_[a], blocks_[a]));
    return AlgebraElement(std::move(out));
  }

  // Block-diagonal matrix of size unit_dim().
  Matrix dense(const AlgebraElement& x) const {
    check(x);
    Matrix m = Matrix::Zero(unit_dim_, unit_dim_);
    for (int a = 0; a < num_blocks(); ++a)
      m.block(row_offsets_[a], row_offsets_[a], blocks_[a], blocks_[a]) = x.block(a);
    return m;
  }
  // Diagonal blocks of m; off_block receives the largest discarded entry.
  AlgebraElement from_dense(const Matrix& m, double* off_block = nullptr) const {
    require(m.rows() == unit_dim_ && m.cols() == unit_dim_, "dense matrix has wrong size");
    std::vector<Matrix> out;
    for (int a = 0; a < num_blocks(); ++a)
      out.push_back(m.block(row_offsets_[a], row_offsets_[a], blocks_[a], blocks_[a]));
    if (off_block) *off_block = qrelkit::max_abs(m - dense(AlgebraElement(out)));
    return AlgebraElement(std::move(out));
  }

 private:
  std::vector<int> blocks_;
  std::vector<std::string> labels_;
  std::vector<int> coord_offsets_;
  std::vector<int> row_offsets_;
  int dim_ = 0;
  int unit_dim_ = 0;
};

// Tr_M(x) = sum_a n(a) Tr(x_a).
inline Complex markov_trace(const MultiMatrixAlgebra& m, const AlgebraElement& x) {
  m.check(x);
  Complex t = 0.0;
  for (int a = 0; a < m.num_blocks(); ++a) t += static_cast<double>(m.block_size(a)) * x.block(a).trace();
  return t;
}

// M^op is identified with M through x^op <-> x^T.
inline MultiMatrixAlgebra opposite(const MultiMatrixAlgebra& m) { return m; }

// Normal unital representation H = U ((+)_a C^{n(a)} (x) C^{m(a)}), with
// x acting as U ((+)_a x_a (x) 1) U*.
class RepresentedAlgebra {
 public:
  RepresentedAlgebra() = default;
  RepresentedAlgebra(MultiMatrixAlgebra algebra, std::vector<int> multiplicities, Matrix block_unitary = Matrix())
      : algebra_(std::move(algebra)), mult_(std::move(multiplicities)), unitary_(std::move(block_unitary)) {
    require(static_cast<int>(mult_.size()) == algebra_.num_blocks(), "one multiplicity per block");
    int off = 0;
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      require(mult_[a] >= 1, "multiplicities must be positive");
      offsets_.push_back(off);
      off += algebra_.block_size(a) * mult_[a];
    }
    hilbert_dim_ = off;
    if (unitary_.size() != 0) {
      require(unitary_.rows() == hilbert_dim_ && unitary_.cols() == hilbert_dim_, "block unitary has wrong size");
      require(qrelkit::max_abs(unitary_.adjoint() * unitary_ - identity(hilbert_dim_)) < 1e-9,
              "block unitary is not unitary");
      if (qrelkit::max_abs(unitary_ - identity(hilbert_dim_)) == 0.0) unitary_ = Matrix();
    }
  }

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const std::vector<int>& multiplicities() const { return mult_; }
  int multiplicity(int a) const { return mult_.at(a); }
  int hilbert_dim() const { return hilbert_dim_; }
  bool has_standard_basis() const { return unitary_.size() == 0; }
  Matrix block_unitary() const { return has_standard_basis() ? identity(hilbert_dim_) : unitary_; }
  // Offset of block a in the standard (pre-unitary) coordinates.
  int std_offset(int a) const { return offsets_.at(a); }

  Matrix embed(const AlgebraElement& x) const {
    algebra_.check(x);
    Matrix m = Matrix::Zero(hilbert_dim_, hilbert_dim_);
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      const int n = algebra_.block_size(a), k = mult_[a];
      m.block(offsets_[a], offsets_[a], n * k, n * k) = kron(x.block(a), identity(k));
    }
    return conjugate_in(m);
  }

  // Trace-preserving conditional expectation B(H) -> M: compress to the
  // diagonal blocks and take the normalized partial trace over C^{m(a)}.
  AlgebraElement compress(const Matrix& t) const {
    require(t.rows() == hilbert_dim_ && t.cols() == hilbert_dim_, "operator has wrong size for this representation");
    const Matrix s = has_standard_basis() ? t : Matrix(unitary_.adjoint() * t * unitary_);
    std::vector<Matrix> out;
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      const int n = algebra_.block_size(a), k = mult_[a];
      Matrix x = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < k; ++l) x(i, j) += s(offsets_[a] + i * k + l, offsets_[a] + j * k + l);
      out.push_back(x / static_cast<double>(k));
    }
    return AlgebraElement(std::move(out));
  }

  // Preimage of an operator assumed to lie in the image of embed().
  AlgebraElement unembed(const Matrix& t, double* residual = nullptr) const {
    AlgebraElement x = compress(t);
    if (residual) *residual = qrelkit::max_abs(embed(x) - t);
    return x;
  }

  Matrix block_projection(int a) const { return embed(algebra_.block_unit(a)); }

  std::vector<Matrix> embedded_basis() const {
    std::vector<Matrix> out;
    for (int k = 0; k < algebra_.dim(); ++k) out.push_back(embed(algebra_.basis(k)));
    return out;
  }

  // Structural commutant (+)_a 1 (x) M_{m(a)}, one matrix unit at a time.
  std::vector<Matrix> commutant_basis() const {
    std::vector<Matrix> out;
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      const int n = algebra_.block_size(a), k = mult_[a];
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
          Matrix m = Matrix::Zero(hilbert_dim_, hilbert_dim_);
          Matrix e = Matrix::Zero(k, k);
          e(p, q) = 1.0;
          m.block(offsets_[a], offsets_[a], n * k, n * k) = kron(identity(n), e);
          out.push_back(conjugate_in(m));
        }
    }
    return out;
  }

  // Generators of the commutant as a *-algebra.
  std::vector<Matrix> commutant_generators() const {
    std::vector<Matrix> out;
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      const int n = algebra_.block_size(a), k = mult_[a];
      auto unit = [&](int p, int q) {
        Matrix m = Matrix::Zero(hilbert_dim_, hilbert_dim_);
        Matrix e = Matrix::Zero(k, k);
        if (p < 0) {
          e = identity(k);
        } else {
          e(p, q) = 1.0;
        }
        m.block(offsets_[a], offsets_[a], n * k, n * k) = kron(identity(n), e);
        return conjugate_in(m);
      };
      out.push_back(unit(-1, -1));
      for (int p = 0; p + 1 < k; ++p) {
        out.push_back(unit(p, p + 1));
        out.push_back(unit(p + 1, p));
      }
    }
    return out;
  }

  // Orthonormal basis (as columns) of the range of the block unit 1_a.
  Matrix block_range(int a) const {
    const int w = algebra_.block_size(a) * mult_[a];
    return block_unitary().middleCols(offsets_[a], w);
  }

  int commutant_dim() const {
    int d = 0;
    for (int k : mult_) d += k * k;
    return d;
  }

  bool same_as(const RepresentedAlgebra& o, double tol = kDefaultTol) const {
    if (algebra_ != o.algebra_ || mult_ != o.mult_) return false;
    if (has_standard_basis() && o.has_standard_basis()) return true;
    return qrelkit::max_abs(block_unitary() - o.block_unitary()) <= tol;
  }

 private:
  Matrix conjugate_in(const Matrix& m) const {
    return has_standard_basis() ? m : Matrix(unitary_ * m * unitary_.adjoint());
  }

  MultiMatrixAlgebra algebra_;
  std::vector<int> mult_;
  Matrix unitary_;
  std::vector<int> offsets_;
  int hilbert_dim_ = 0;
};

// x^op acts on conj(H) as embed(x)^T, which is the representation of
// M (through x^op <-> x^T) with block unitary conj(U).
inline RepresentedAlgebra opposite(const RepresentedAlgebra& r) {
  return RepresentedAlgebra(r.algebra(), r.multiplicities(),
                            r.has_standard_basis() ? Matrix() : Matrix(r.block_unitary().conjugate()));
}

// Commutant computed as the nullspace of the commutation equations with a
// generating set; used to cross-check commutant_basis().
inline Matrix commutant_by_nullspace(const RepresentedAlgebra& r, double tol = kDefaultTol) {
  const int h = r.hilbert_dim();
  const auto gens = r.algebra().generators();
  Matrix sys(static_cast<Eigen::Index>(gens.size()) * h * h, h * h);
  for (size_t g = 0; g < gens.size(); ++g) {
    const Matrix x = r.embed(gens[g]);
    sys.block(static_cast<Eigen::Index>(g) * h * h, 0, h * h, h * h) =
        kron(x, identity(h)) - kron(identity(h), x.transpose());
  }
  return nullspace(sys, tol, 1.0);
}

class Functional {
 public:
  Functional() = default;
  // phi(x) = Tr_M(Q x), Q = (+)_a densities[a], each positive definite.
  Functional(MultiMatrixAlgebra algebra, std::vector<Matrix> densities)
      : algebra_(std::move(algebra)), densities_(std::move(densities)) {
    require(static_cast<int>(densities_.size()) == algebra_.num_blocks(), "one density per block");
    markov_ = true;
    for (int a = 0; a < algebra_.num_blocks(); ++a) {
      const Matrix& q = densities_[a];
      const int n = algebra_.block_size(a);
      require(q.rows() == n && q.cols() == n, "density block has wrong size");
      require(qrelkit::max_abs(q - q.adjoint()) <= 1e-9 * std::max(1.0, qrelkit::max_abs(q)),
              "density is not Hermitian");
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(q), Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(n - 1);
      if (!(lo > 1e-12 * hi) || hi <= 0.0) throw InputError("density is not positive definite");
      if (qrelkit::max_abs(q - identity(n)) > 1e-12) markov_ = false;
    }
  }

  static Functional markov_trace(const MultiMatrixAlgebra& m) {
    std::vector<Matrix> d;
    for (int n : m.blocks()) d.push_back(identity(n));
    return Functional(m, std::move(d));
  }

  const MultiMatrixAlgebra& algebra() const { return algebra_; }
  const Matrix& density(int a) const { return densities_.at(a); }
  const std::vector<Matrix>& densities() const { return densities_; }
  AlgebraElement density_element() const { return AlgebraElement(densities_); }
  bool is_markov_trace() const { return markov_; }

  Complex operator()(const AlgebraElement& x) const {
    return qrelkit::markov_trace(algebra_, density_element() * x);
  }

 private:
  MultiMatrixAlgebra algebra_;
  std::vector<Matrix> densities_;
  bool markov_ = true;
};

// L^2(M, phi) in coordinates c(x)_a = sqrt(n(a)) vec(x_a Q_a^{1/2}), so that
// <c(x), c(y)> = phi(x* y). The left action is the representation of M with
// multiplicities n(a) and the standard basis.
class GNSSpace {
 public:
  GNSSpace() = default;
  explicit GNSSpace(Functional phi) : phi_(std::move(phi)) {
    const auto& m = phi_.algebra();
    for (int a = 0; a < m.num_blocks(); ++a) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(phi_.density(a)));
      evecs_.push_back(es.eigenvectors());
      evals_.push_back(es.eigenvalues());
    }
    q_half_ = q_power(0.5);
    q_mhalf_ = q_power(-0.5);
  }

  const MultiMatrixAlgebra& algebra() const { return phi_.algebra(); }
  const Functional& functional() const { return phi_; }
  int dim() const { return algebra().dim(); }

  // Q^s for complex s, via the spectral decomposition of each Q_a.
  AlgebraElement q_power(Complex s) const {
    std::vector<Matrix> out;
    for (size_t a = 0; a < evecs_.size(); ++a) {
      Vector d(evals_[a].size());
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(s * std::log(evals_[a](i)));
      out.push_back(evecs_[a] * d.asDiagonal() * evecs_[a].adjoint());
    }
    return AlgebraElement(std::move(out));
  }

  // sigma_z(x) = Q^{iz} x Q^{-iz}.
  AlgebraElement modular_sigma(Complex z, const AlgebraElement& x) const {
    return q_power(kI * z) * x * q_power(-kI * z);
  }

  Vector coords(const AlgebraElement& x) const {
    const auto& m = algebra();
    m.check(x);
    Vector v(m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      v.segment(m.coord_offset(a), n * n) = std::sqrt(static_cast<double>(n)) * vec(x.block(a) * q_half_.block(a));
    }
    return v;
  }

  AlgebraElement element(const Vector& v) const {
    const auto& m = algebra();
    require(v.size() == m.dim(), "GNS vector has wrong length");
    std::vector<Matrix> out;
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      out.push_back(unvec(v.segment(m.coord_offset(a), n * n), n, n) * q_mhalf_.block(a) /
                    std::sqrt(static_cast<double>(n)));
    }
    return AlgebraElement(std::move(out));
  }

  Vector unit() const { return coords(algebra().one()); }

  // Matrix C with c(x) = C coords(x).
  Matrix coordinate_change() const {
    const auto& m = algebra();
    Matrix c = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      c.block(m.coord_offset(a), m.coord_offset(a), n * n, n * n) =
          std::sqrt(static_cast<double>(n)) * kron(identity(n), q_half_.block(a).transpose());
    }
    return c;
  }
  Matrix inverse_coordinate_change() const {
    const auto& m = algebra();
    Matrix c = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      c.block(m.coord_offset(a), m.coord_offset(a), n * n, n * n) =
          kron(identity(n), q_mhalf_.block(a).transpose()) / std::sqrt(static_cast<double>(n));
    }
    return c;
  }

  Matrix left_action(const AlgebraElement& x) const {
    const auto& m = algebra();
    m.check(x);
    Matrix l = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      l.block(m.coord_offset(a), m.coord_offset(a), n * n, n * n) = kron(x.block(a), identity(n));
    }
    return l;
  }

  // c(a y) = right_action(y) c(a).
  Matrix right_action(const AlgebraElement& y) const {
    const auto& m = algebra();
    m.check(y);
    Matrix r = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      const Matrix b = q_mhalf_.block(a) * y.block(a) * q_half_.block(a);
      r.block(m.coord_offset(a), m.coord_offset(a), n * n, n * n) = kron(identity(n), b.transpose());
    }
    return r;
  }

  // nabla^s c(x) = c(Q^s x Q^{-s}).
  Matrix nabla_power(double s) const {
    const auto& m = algebra();
    const AlgebraElement qs = q_power(s), qms = q_power(-s);
    Matrix d = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a);
      d.block(m.coord_offset(a), m.coord_offset(a), n * n, n * n) = kron(qs.block(a), qms.block(a).transpose());
    }
    return d;
  }

  // J c = P conj(c), with P the in-block transposition of x_a Q_a^{1/2}.
  Matrix j_permutation() const {
    const auto& m = algebra();
    Matrix p = Matrix::Zero(m.dim(), m.dim());
    for (int a = 0; a < m.num_blocks(); ++a) {
      const int n = m.block_size(a), o = m.coord_offset(a);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(o + j * n + i, o + i * n + j) = 1.0;
    }
    return p;
  }
  Vector apply_j(const Vector& v) const { return j_permutation() * v.conjugate(); }
  // J T J for a linear operator T on L^2(M).
  Matrix j_conjugate(const Matrix& t) const {
    const Matrix p = j_permutation();
    return p * t.conjugate() * p;
  }

  RepresentedAlgebra representation() const { return RepresentedAlgebra(algebra(), algebra().blocks()); }

  // M' = J M J, spanned by right multiplications by matrix units.
  std::vector<Matrix> commutant_basis() const {
    std::vector<Matrix> out;
    for (int k = 0; k < dim(); ++k) out.push_back(right_action(algebra().basis(k)));
    return out;
  }

 private:
  Functional phi_;
  std::vector<Matrix> evecs_;
  std::vector<RealVector> evals_;
  AlgebraElement q_half_;
  AlgebraElement q_mhalf_;
};

}  // namespace qrelkit
