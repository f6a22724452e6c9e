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

// Finite-dimensional operator subspaces of B(H, K), stored as an
// orthonormal basis of row-major vectorizations.

#include <cstdint>
#include <vector>

#include "qrelkit/common.hpp"
#include "qrelkit/rng.hpp"

namespace qrelkit {

class OperatorSubspace {
 public:
  OperatorSubspace() = default;
  // onb: (rows*cols) x k with orthonormal columns.
  OperatorSubspace(int rows, int cols, Matrix onb) : rows_(rows), cols_(cols), onb_(std::move(onb)) {
    require(onb_.rows() == static_cast<Eigen::Index>(rows) * cols, "basis length does not match operator shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int ambient_dim() const { return rows_ * cols_; }
  int dim() const { return static_cast<int>(onb_.cols()); }
  const Matrix& onb() const { return onb_; }

  Matrix element(int i) const { return unvec(onb_.col(i), rows_, cols_); }
  std::vector<Matrix> basis() const {
    std::vector<Matrix> out;
    for (int i = 0; i < dim(); ++i) out.push_back(element(i));
    return out;
  }

  // Canonical form: two spaces are equal iff their projections agree.
  Matrix projection() const { return onb_ * onb_.adjoint(); }

  // Distance of a vectorized operator from the space.
  double residual(const Matrix& t) const {
    require(t.rows() == rows_ && t.cols() == cols_, "operator shape does not match subspace");
    const Vector v = vec(t);
    return (v - onb_ * (onb_.adjoint() * v)).norm();
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  Matrix onb_;
};

inline OperatorSubspace zero_space(int rows, int cols) {
  return OperatorSubspace(rows, cols, Matrix(static_cast<Eigen::Index>(rows) * cols, 0));
}

inline OperatorSubspace full_space(int rows, int cols) {
  return OperatorSubspace(rows, cols, identity(static_cast<Eigen::Index>(rows) * cols));
}

// Span of generators; singular values below tol * max(sigma_max, |g|_max,
// scale) are dropped, so numerically vanishing generators give the zero
// space. Pass the scale of the data the generators were derived from when
// all of them may be rounding-sized.
inline OperatorSubspace span_of(int rows, int cols, const std::vector<Matrix>& gens, double tol = kDefaultTol,
                                double scale = 0.0) {
  Matrix stacked(static_cast<Eigen::Index>(rows) * cols, static_cast<Eigen::Index>(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    require(gens[i].rows() == rows && gens[i].cols() == cols, "generator shape mismatch");
    stacked.col(static_cast<Eigen::Index>(i)) = vec(gens[i]);
    scale = std::max(scale, gens[i].norm());
  }
  return OperatorSubspace(rows, cols, orthonormal_range(stacked, tol, scale));
}

namespace detail {

// Span of all products f_1 f_2 ... f_r with f_j drawn from factors[j]. The
// image of a multilinear map is an irreducible variety, so when the number
// of products is large the span of generic random samples of the image
// equals the span of all products. Sampling uses a fixed seed, which keeps
// the result a pure function of its inputs.
inline OperatorSubspace multilinear_span(int rows, int cols, const std::vector<std::vector<Matrix>>& factors,
                                         double tol) {
  for (const auto& f : factors)
    if (f.empty()) return zero_space(rows, cols);
  const Eigen::Index ambient = static_cast<Eigen::Index>(rows) * cols;
  double count = 1.0;
  for (const auto& f : factors) count *= static_cast<double>(f.size());

  auto product_of = [&](const std::vector<Matrix>& picks) {
    Matrix p = picks[0];
    for (size_t j = 1; j < picks.size(); ++j) p = p * picks[j];
    require(p.rows() == rows && p.cols() == cols, "product has unexpected shape");
    return p;
  };

  std::vector<Matrix> samples;
  double scale = 0.0;
  if (count <= 2.0 * static_cast<double>(ambient)) {
    std::vector<size_t> idx(factors.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<Matrix> picks;
      double s = 1.0;
      for (size_t j = 0; j < factors.size(); ++j) {
        picks.push_back(factors[j][idx[j]]);
        s *= factors[j][idx[j]].norm();
      }
      samples.push_back(product_of(picks));
      scale = std::max(scale, s);
      done = true;
      for (size_t j = factors.size(); j-- > 0;) {
        if (++idx[j] < factors[j].size()) {
          done = false;
          break;
        }
        idx[j] = 0;
      }
    }
  } else {
    Rng rng(0x51A7E5EEDULL ^ (static_cast<std::uint64_t>(ambient) << 20) ^ static_cast<std::uint64_t>(count));
    const Eigen::Index n_samples = ambient + 8;
    for (Eigen::Index s = 0; s < n_samples; ++s) {
      std::vector<Matrix> picks;
      double nrm = 1.0;
      for (const auto& f : factors) {
        Matrix comb = Matrix::Zero(f[0].rows(), f[0].cols());
        for (const auto& g : f) comb += rng.complex_normal() * g;
        nrm *= comb.norm();
        picks.push_back(std::move(comb));
      }
      samples.push_back(product_of(picks));
      scale = std::max(scale, nrm);
    }
  }
  Matrix stacked(ambient, static_cast<Eigen::Index>(samples.size()));
  for (size_t i = 0; i < samples.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = vec(samples[i]);
  return OperatorSubspace(rows, cols, orthonormal_range(stacked, tol, scale));
}

}  // namespace detail

// V o W = span{v w}.
inline OperatorSubspace compose_spaces(const OperatorSubspace& v, const OperatorSubspace& w,
                                       double tol = kDefaultTol) {
  require(v.cols() == w.rows(), "compose: inner dimensions differ");
  return detail::multilinear_span(v.rows(), w.cols(), {v.basis(), w.basis()}, tol);
}

// span{a g b : a in left, g in gens, b in right}.
inline OperatorSubspace bimodule_generate(const std::vector<Matrix>& left, const std::vector<Matrix>& gens,
                                          const std::vector<Matrix>& right, double tol = kDefaultTol) {
  require(!left.empty() && !right.empty(), "bimodule_generate needs non-empty multiplier sets");
  const int rows = static_cast<int>(left[0].rows()), cols = static_cast<int>(right[0].cols());
  for (const auto& g : gens)
    require(g.rows() == left[0].cols() && g.cols() == right[0].rows(), "bimodule_generate: shape mismatch");
  return detail::multilinear_span(rows, cols, {left, gens, right}, tol);
}

inline OperatorSubspace adjoint_space(const OperatorSubspace& v) {
  std::vector<Matrix> g;
  for (const auto& b : v.basis()) g.push_back(b.adjoint());
  return span_of(v.cols(), v.rows(), g);
}

inline OperatorSubspace transpose_space(const OperatorSubspace& v) {
  std::vector<Matrix> g;
  for (const auto& b : v.basis()) g.push_back(b.transpose());
  return span_of(v.cols(), v.rows(), g);
}

// {l t r : t in V} for fixed l, r.
inline OperatorSubspace map_space(const OperatorSubspace& v, const Matrix& l, const Matrix& r,
                                  double tol = kDefaultTol) {
  require(l.cols() == v.rows() && r.rows() == v.cols(), "map_space: shape mismatch");
  std::vector<Matrix> g;
  for (const auto& b : v.basis()) g.push_back(l * b * r);
  return span_of(static_cast<int>(l.rows()), static_cast<int>(r.cols()), g, tol, l.norm() * r.norm());
}

inline OperatorSubspace sum_spaces(const OperatorSubspace& v, const OperatorSubspace& w, double tol = kDefaultTol) {
  require(v.rows() == w.rows() && v.cols() == w.cols(), "sum: shape mismatch");
  Matrix stacked(v.onb().rows(), v.dim() + w.dim());
  stacked << v.onb(), w.onb();
  return OperatorSubspace(v.rows(), v.cols(), orthonormal_range(stacked, tol, 1.0));
}

// Largest column residual of V's basis outside W.
inline double inclusion_residual(const OperatorSubspace& v, const OperatorSubspace& w) {
  require(v.rows() == w.rows() && v.cols() == w.cols(), "compare: shape mismatch");
  if (v.dim() == 0) return 0.0;
  const Matrix r = v.onb() - w.onb() * (w.onb().adjoint() * v.onb());
  return r.colwise().norm().maxCoeff();
}

inline bool is_subspace_of(const OperatorSubspace& v, const OperatorSubspace& w, double tol = kDefaultTol) {
  return v.dim() <= w.dim() && inclusion_residual(v, w) <= tol;
}

inline bool contains(const OperatorSubspace& v, const Matrix& t, double tol = kDefaultTol) {
  return v.residual(t) <= tol * std::max(1.0, t.norm());
}

// Symmetric distance: zero iff the spaces coincide.
inline double space_distance(const OperatorSubspace& v, const OperatorSubspace& w) {
  if (v.dim() != w.dim()) return 1.0;
  return std::max(inclusion_residual(v, w), inclusion_residual(w, v));
}

inline bool equal_spaces(const OperatorSubspace& v, const OperatorSubspace& w, double tol = kDefaultTol) {
  return v.dim() == w.dim() && space_distance(v, w) <= tol;
}

enum class Inclusion { kEqual, kSubset, kSuperset, kIncomparable };

inline Inclusion compare(const OperatorSubspace& v, const OperatorSubspace& w, double tol = kDefaultTol) {
  const bool sub = is_subspace_of(v, w, tol), sup = is_subspace_of(w, v, tol);
  if (sub && sup) return Inclusion::kEqual;
  if (sub) return Inclusion::kSubset;
  if (sup) return Inclusion::kSuperset;
  return Inclusion::kIncomparable;
}

inline OperatorSubspace intersect(const OperatorSubspace& v, const OperatorSubspace& w, double tol = kDefaultTol) {
  require(v.rows() == w.rows() && v.cols() == w.cols(), "intersect: shape mismatch");
  if (v.dim() == 0 || w.dim() == 0) return zero_space(v.rows(), v.cols());
  const Matrix outside = v.onb() - w.onb() * (w.onb().adjoint() * v.onb());
  const Matrix coeffs = nullspace(outside, tol, 1.0);
  if (coeffs.cols() == 0) return zero_space(v.rows(), v.cols());
  return OperatorSubspace(v.rows(), v.cols(), orthonormal_range(v.onb() * coeffs, tol, 1.0));
}

}  // namespace qrelkit
