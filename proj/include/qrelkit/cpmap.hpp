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

// Completely positive maps theta : N -> M between multimatrix algebras,
// their Kraus and Stinespring data, and the quantum relations they induce.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qrelkit/qrel.hpp"

namespace qrelkit {

// theta : source (N) -> target (M), stored as its matrix on algebra
// coordinates: column k holds coords(theta(basis(k))).
class CPMap {
 public:
  CPMap() = default;
  CPMap(MultiMatrixAlgebra source, MultiMatrixAlgebra target, Matrix action, double tol = kDefaultTol)
      : source_(std::move(source)), target_(std::move(target)), action_(std::move(action)) {
    require(action_.rows() == target_.dim() && action_.cols() == source_.dim(), "action matrix has wrong shape");
    analyse(tol);
  }

  const MultiMatrixAlgebra& source() const { return source_; }
  const MultiMatrixAlgebra& target() const { return target_; }
  const Matrix& action() const { return action_; }

  AlgebraElement apply(const AlgebraElement& y) const { return target_.element(action_ * source_.coords(y)); }

  bool is_cp() const { return cp_; }
  bool is_unital() const { return unital_; }
  bool is_hom() const { return hom_; }
  double min_choi_eigenvalue() const { return min_choi_; }
  // Block a of the Choi matrix, sum_ij e_ij (x) theta(e^a_ij), with
  // theta(e^a_ij) written as a block-diagonal matrix.
  const std::vector<Matrix>& choi_blocks() const { return choi_; }

 private:
  void analyse(double tol) {
    choi_.clear();
    min_choi_ = 0.0;
    double scale = std::max(1.0, max_abs(action_));
    bool first = true;
    for (int a = 0; a < source_.num_blocks(); ++a) {
      const int n = source_.block_size(a), u = target_.unit_dim();
      Matrix c = Matrix::Zero(n * u, n * u);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.block(i * u, j * u, u, u) = target_.dense(apply(source_.matrix_unit(a, i, j)));
      const double herm = max_abs(c - c.adjoint());
      const double ev = min_eigenvalue(c) - herm;
      min_choi_ = first ? ev : std::min(min_choi_, ev);
      first = false;
      choi_.push_back(std::move(c));
    }
    cp_ = min_choi_ >= -tol * scale;
    const AlgebraElement one = apply(source_.one());
    unital_ = (one - target_.one()).max_abs() <= tol * scale;
    hom_ = true;
    for (int p = 0; p < source_.dim() && hom_; ++p) {
      const AlgebraElement ep = source_.basis(p);
      const AlgebraElement tp = apply(ep);
      if ((apply(ep.adjoint()) - tp.adjoint()).max_abs() > tol * scale) hom_ = false;
      for (int q = 0; q < source_.dim() && hom_; ++q) {
        const AlgebraElement eq = source_.basis(q);
        if ((apply(ep * eq) - tp * apply(eq)).max_abs() > tol * scale * scale) hom_ = false;
      }
    }
  }

  MultiMatrixAlgebra source_;
  MultiMatrixAlgebra target_;
  Matrix action_;
  std::vector<Matrix> choi_;
  double min_choi_ = 0.0;
  bool cp_ = false;
  bool unital_ = false;
  bool hom_ = false;
};

inline CPMap cp_from_function(const MultiMatrixAlgebra& source, const MultiMatrixAlgebra& target,
                              const std::function<AlgebraElement(const AlgebraElement&)>& f,
                              double tol = kDefaultTol) {
  Matrix action(target.dim(), source.dim());
  for (int k = 0; k < source.dim(); ++k) action.col(k) = target.coords(f(source.basis(k)));
  return CPMap(source, target, std::move(action), tol);
}

// Rejects maps that are not completely positive.
inline CPMap make_cp(const MultiMatrixAlgebra& source, const MultiMatrixAlgebra& target, Matrix action,
                     double tol = kDefaultTol) {
  CPMap t(source, target, std::move(action), tol);
  if (!t.is_cp())
    throw ValidationError("map is not completely positive (min Choi eigenvalue " +
                          std::to_string(t.min_choi_eigenvalue()) + ")");
  return t;
}

inline CPMap identity_map(const MultiMatrixAlgebra& m) { return CPMap(m, m, identity(m.dim())); }

// theta2 o theta1.
inline CPMap compose_cp(const CPMap& theta2, const CPMap& theta1, double tol = kDefaultTol) {
  require(theta1.target() == theta2.source(), "compose_cp: maps are not composable");
  return CPMap(theta1.source(), theta2.target(), theta2.action() * theta1.action(), tol);
}

// theta(y) = sum_i b_i* y b_i with b_i : H_M -> H_N.
inline CPMap cp_from_kraus(const RepresentedAlgebra& n_rep, const RepresentedAlgebra& m_rep,
                           const std::vector<Matrix>& kraus, double tol = kDefaultTol) {
  for (const auto& b : kraus)
    require(b.rows() == n_rep.hilbert_dim() && b.cols() == m_rep.hilbert_dim(), "Kraus operator has wrong shape");
  const auto& n = n_rep.algebra();
  const auto& m = m_rep.algebra();
  Matrix action(m.dim(), n.dim());
  double worst = 0.0, scale = 1.0;
  for (int k = 0; k < n.dim(); ++k) {
    const Matrix y = n_rep.embed(n.basis(k));
    Matrix t = Matrix::Zero(m_rep.hilbert_dim(), m_rep.hilbert_dim());
    for (const auto& b : kraus) t += b.adjoint() * y * b;
    double r = 0.0;
    action.col(k) = m.coords(m_rep.unembed(t, &r));
    worst = std::max(worst, r);
    scale = std::max(scale, max_abs(t));
  }
  if (worst > std::sqrt(tol) * scale)
    throw InputError("Kraus operators do not map N into M (residual " + std::to_string(worst) + ")");
  return CPMap(n, m, std::move(action), tol);
}

// theta : l^inf(Y) -> l^inf(X), theta(f)(x) = sum_y p[x][y] f(y).
inline CPMap classical_channel(const std::vector<std::vector<double>>& p, double tol = kDefaultTol) {
  require(!p.empty() && !p[0].empty(), "channel needs at least one input and one output");
  const int nx = static_cast<int>(p.size()), ny = static_cast<int>(p[0].size());
  Matrix action = Matrix::Zero(nx, ny);
  for (int x = 0; x < nx; ++x) {
    require(static_cast<int>(p[x].size()) == ny, "channel rows have different lengths");
    double s = 0.0;
    for (int y = 0; y < ny; ++y) {
      require(p[x][y] >= 0.0, "channel probabilities must be non-negative");
      action(x, y) = p[x][y];
      s += p[x][y];
    }
    require(std::abs(s - 1.0) <= 1e-9, "channel rows must sum to one");
  }
  return CPMap(MultiMatrixAlgebra(std::vector<int>(ny, 1)), MultiMatrixAlgebra(std::vector<int>(nx, 1)),
               std::move(action), tol);
}

// phi_target o theta = phi_source.
inline bool preserves_states(const CPMap& theta, const Functional& phi_source, const Functional& phi_target,
                             double tol = kDefaultTol) {
  require(phi_source.algebra() == theta.source() && phi_target.algebra() == theta.target(),
          "functionals do not match the map");
  for (int k = 0; k < theta.source().dim(); ++k) {
    const AlgebraElement b = theta.source().basis(k);
    if (std::abs(phi_target(theta.apply(b)) - phi_source(b)) > tol * std::max(1.0, std::abs(phi_source(b))))
      return false;
  }
  return true;
}

// Kraus operators b_i : H_M -> H_N with theta(y) = sum_i b_i* y b_i. The map
// is first extended to B(H_N) through the trace-preserving conditional
// expectation onto N; the Choi matrix of the extension is then diagonalised.
inline std::vector<Matrix> kraus(const CPMap& theta, const RepresentedAlgebra& m_rep, const RepresentedAlgebra& n_rep,
                                 double tol = kDefaultTol) {
  require(theta.source() == n_rep.algebra() && theta.target() == m_rep.algebra(),
          "kraus: representations do not match the map");
  if (!theta.is_cp()) throw ValidationError("kraus: map is not completely positive");
  const int dk = n_rep.hilbert_dim(), dh = m_rep.hilbert_dim();
  Matrix choi = Matrix::Zero(static_cast<Eigen::Index>(dk) * dh, static_cast<Eigen::Index>(dk) * dh);
  for (int k = 0; k < dk; ++k)
    for (int l = 0; l < dk; ++l) {
      Matrix e = Matrix::Zero(dk, dk);
      e(k, l) = 1.0;
      choi.block(k * dh, l * dh, dh, dh) = m_rep.embed(theta.apply(n_rep.compress(e)));
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(choi));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.maxCoeff(), 0.0) : 0.0;
  std::vector<Matrix> out;
  for (Eigen::Index i = ev.size(); i-- > 0;) {
    if (ev(i) <= tol * top || ev(i) <= 0.0) break;
    const Vector w = es.eigenvectors().col(i).conjugate() * std::sqrt(ev(i));
    out.push_back(unvec(w, dk, dh));
  }
  double worst = 0.0;
  for (int k = 0; k < theta.source().dim(); ++k) {
    const Matrix y = n_rep.embed(theta.source().basis(k));
    Matrix t = Matrix::Zero(dh, dh);
    for (const auto& b : out) t += b.adjoint() * y * b;
    worst = std::max(worst, max_abs(t - m_rep.embed(theta.apply(theta.source().basis(k)))));
  }
  if (worst > std::sqrt(tol) * std::max(1.0, top))
    throw ConsistencyError("kraus: reconstruction residual " + std::to_string(worst));
  return out;
}

struct Stinespring {
  Matrix v;  // H_M -> H_N (x) C^aux
  int aux_dim = 0;
  bool minimal = false;
};

// v xi = sum_i b_i xi (x) delta_i, so theta(y) = v* (y (x) 1) v.
inline Stinespring stinespring(const CPMap& theta, const RepresentedAlgebra& m_rep, const RepresentedAlgebra& n_rep,
                               double tol = kDefaultTol) {
  const auto ks = kraus(theta, m_rep, n_rep, tol);
  const int r = static_cast<int>(ks.size()), dk = n_rep.hilbert_dim(), dh = m_rep.hilbert_dim();
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(dk) * std::max(r, 1), dh);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < dk; ++k) v.row(k * r + i) = ks[i].row(k);
  // Kraus vectors come from distinct Choi eigenvectors, hence are
  // linearly independent and the dilation is minimal.
  return {v, r, true};
}

// span{y' b_i : y' in N'}.
inline QuantumRelation relation_of_kraus(const RepresentedAlgebra& m_rep, const RepresentedAlgebra& n_rep,
                                         const std::vector<Matrix>& ks, double tol = kDefaultTol) {
  const int rows = n_rep.hilbert_dim(), cols = m_rep.hilbert_dim();
  std::vector<Matrix> nonzero;
  for (const auto& b : ks) {
    require(b.rows() == rows && b.cols() == cols, "Kraus operator has wrong shape");
    nonzero.push_back(b);
  }
  if (nonzero.empty()) return QuantumRelation(m_rep, n_rep, zero_space(rows, cols));
  OperatorSubspace s = detail::multilinear_span(rows, cols, {n_rep.commutant_basis(), nonzero}, tol);
  const double r = bimodule_residual(m_rep, n_rep, s);
  if (r > std::sqrt(tol)) throw ConsistencyError("relation of Kraus operators is not a bimodule");
  return QuantumRelation(m_rep, n_rep, std::move(s));
}

// V^theta, a relation from M to N.
inline QuantumRelation relation_of_cp(const CPMap& theta, const RepresentedAlgebra& m_rep,
                                      const RepresentedAlgebra& n_rep, double tol = kDefaultTol) {
  return relation_of_kraus(m_rep, n_rep, kraus(theta, m_rep, n_rep, tol), tol);
}

// V^{theta*} o V^theta, a relation on M.
inline QuantumRelation confusability_graph(const CPMap& theta, const RepresentedAlgebra& m_rep,
                                           const RepresentedAlgebra& n_rep, double tol = kDefaultTol) {
  const QuantumRelation v = relation_of_cp(theta, m_rep, n_rep, tol);
  return compose_relations(adjoint_relation(v), v, tol);
}

// u_N* (V (x) B(L_M, L_N)) u_M = span{c_j* v b_i} for Kraus b_i of theta_M
// and c_j of theta_N.
inline QuantumRelation pullback_by_dilation(const QuantumRelation& v, const CPMap& theta_m,
                                            const RepresentedAlgebra& m2_rep, const CPMap& theta_n,
                                            const RepresentedAlgebra& n2_rep, double tol = kDefaultTol) {
  const auto b = kraus(theta_m, m2_rep, v.source(), tol);
  const auto c = kraus(theta_n, n2_rep, v.target(), tol);
  const int rows = n2_rep.hilbert_dim(), cols = m2_rep.hilbert_dim();
  if (b.empty() || c.empty() || v.dim() == 0) return QuantumRelation(m2_rep, n2_rep, zero_space(rows, cols));
  std::vector<Matrix> cs;
  for (const auto& x : c) cs.push_back(x.adjoint());
  return QuantumRelation(m2_rep, n2_rep, detail::multilinear_span(rows, cols, {cs, v.space().basis(), b}, tol));
}

// Pullback of V (from M1 to N1) along theta_M : M1 -> M2 and
// theta_N : N1 -> N2, computed as V^{theta_N*} o V o V^{theta_M} and
// checked against the dilation formula.
inline QuantumRelation pullback(const QuantumRelation& v, const CPMap& theta_m, const RepresentedAlgebra& m2_rep,
                                const CPMap& theta_n, const RepresentedAlgebra& n2_rep, double tol = kDefaultTol) {
  require(theta_m.source() == v.source().algebra() && theta_n.source() == v.target().algebra(),
          "pullback: maps do not start at the relation's algebras");
  const QuantumRelation vm = relation_of_cp(theta_m, m2_rep, v.source(), tol);
  const QuantumRelation vn = relation_of_cp(theta_n, n2_rep, v.target(), tol);
  const QuantumRelation out = compose_relations(adjoint_relation(vn), compose_relations(v, vm, tol), tol);
  const QuantumRelation dil = pullback_by_dilation(v, theta_m, m2_rep, theta_n, n2_rep, tol);
  if (!equal_spaces(out.space(), dil.space(), std::sqrt(tol)))
    throw ConsistencyError("pullback: composition and dilation formulas disagree (dims " +
                           std::to_string(out.dim()) + " vs " + std::to_string(dil.dim()) + ")");
  return out;
}

namespace detail {

// Maximises t -> lambda_min(g0 + sum_k t_k dirs[k]) by ascent on a
// soft-min of the spectrum. With on_sphere the offset is ignored and t is
// kept on the unit sphere. Stops once the value exceeds target.
struct MinEigResult {
  RealVector t;
  double value = -1e300;
};

inline MinEigResult maximize_min_eigenvalue(const Matrix& g0, const std::vector<Matrix>& dirs, RealVector t,
                                            bool on_sphere, double target, int iters) {
  auto assemble = [&](const RealVector& s) {
    Matrix g = on_sphere ? Matrix(Matrix::Zero(g0.rows(), g0.cols())) : g0;
    for (size_t k = 0; k < dirs.size(); ++k) g += s(static_cast<Eigen::Index>(k)) * dirs[k];
    return g;
  };
  if (on_sphere && t.norm() > 0) t /= t.norm();
  MinEigResult best{t, -1e300};
  double step = 0.5;
  for (int it = 0; it < iters; ++it) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(assemble(t)));
    const RealVector& ev = es.eigenvalues();
    const double lo = ev(0);
    if (lo > best.value) best = {t, lo};
    if (lo > target || dirs.empty()) break;
    const double mu = std::max(1e-3, 0.05 * (ev(ev.size() - 1) - lo));
    RealVector w(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) w(i) = std::exp(-(ev(i) - lo) / mu);
    w /= w.sum();
    RealVector grad = RealVector::Zero(static_cast<Eigen::Index>(dirs.size()));
    for (size_t k = 0; k < dirs.size(); ++k)
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (w(i) < 1e-8) continue;
        const Vector& q = es.eigenvectors().col(i);
        grad(static_cast<Eigen::Index>(k)) += w(i) * (q.adjoint() * dirs[k] * q)(0, 0).real();
      }
    if (on_sphere) grad -= grad.dot(t) * t;
    const double gn = grad.norm();
    if (gn < 1e-14) break;
    t += step * grad / gn;
    if (on_sphere) t /= t.norm();
    step = std::max(step * 0.98, 1e-4);
  }
  return best;
}

}  // namespace detail

struct UcpRealizability {
  bool realizable = false;
  bool unique_candidate = false;  // the affine solution set is a point
  Matrix gram;                    // best Hermitian G found
  double min_eigenvalue = 0.0;    // of gram
  double equation_residual = 0.0;
};

// For a relation V into a single full block of multiplicity one: is there a
// UCP theta with V^theta = V? Equivalent to a positive definite Hermitian G
// with sum_ij G_ij u_i* u_j = 1 over a basis u of V, subject to theta landing
// in M. The search is exact when the linear constraints pin G down.
inline UcpRealizability ucp_realizable_full_target(const QuantumRelation& v, double tol = kDefaultTol,
                                                   int iters = 2000) {
  const RepresentedAlgebra& n = v.target();
  require(n.algebra().num_blocks() == 1 && n.multiplicity(0) == 1,
          "ucp_realizable_full_target: target must be one full block of multiplicity one");
  const auto u = v.space().basis();
  const int k = static_cast<int>(u.size()), dh = v.source().hilbert_dim(), dk = n.hilbert_dim();
  UcpRealizability out;
  if (k == 0) return out;

  // Real parametrisation of Hermitian k x k matrices.
  std::vector<Matrix> herm;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Matrix e = Matrix::Zero(k, k);
      if (i == j) {
        e(i, i) = 1.0;
        herm.push_back(e);
      } else {
        e(i, j) = e(j, i) = 1.0;
        herm.push_back(e);
        Matrix f = Matrix::Zero(k, k);
        f(i, j) = -kI;
        f(j, i) = kI;
        herm.push_back(f);
      }
    }
  const int np = static_cast<int>(herm.size());
  auto form = [&](const Matrix& g, const Matrix& y) {
    Matrix t = Matrix::Zero(dh, dh);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (g(i, j) != 0.0) t += g(i, j) * u[i].adjoint() * y * u[j];
    return t;
  };
  std::vector<RealVector> rows_of;  // column p = equations for herm[p]
  std::vector<Matrix> blocks_per_param(np);
  const auto mgens = v.source().commutant_generators();
  for (int p = 0; p < np; ++p) {
    std::vector<Complex> eq;
    const Matrix t1 = form(herm[p], identity(dk));
    for (Eigen::Index i = 0; i < t1.size(); ++i) eq.push_back(t1.data()[i]);
    for (int a = 0; a < dk; ++a)
      for (int b = 0; b < dk; ++b) {
        Matrix e = Matrix::Zero(dk, dk);
        e(a, b) = 1.0;
        const Matrix t = form(herm[p], e);
        for (const auto& c : mgens) {
          const Matrix comm = t * c - c * t;
          for (Eigen::Index i = 0; i < comm.size(); ++i) eq.push_back(comm.data()[i]);
        }
      }
    RealVector r(2 * eq.size());
    for (size_t i = 0; i < eq.size(); ++i) {
      r(2 * i) = eq[i].real();
      r(2 * i + 1) = eq[i].imag();
    }
    rows_of.push_back(std::move(r));
  }
  const Eigen::Index neq = rows_of[0].size();
  RealMatrix sys(neq, np);
  for (int p = 0; p < np; ++p) sys.col(p) = rows_of[p];
  RealVector rhs = RealVector::Zero(neq);
  {
    const Matrix id = identity(dh);
    for (Eigen::Index i = 0; i < id.size(); ++i) {
      rhs(2 * i) = id.data()[i].real();
      rhs(2 * i + 1) = id.data()[i].imag();
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(sys, Eigen::ComputeFullV | Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  const double cut = 1e-10 * (s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  RealVector p0 = RealVector::Zero(np);
  for (Eigen::Index i = 0; i < rank; ++i)
    p0 += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / s(i));
  out.equation_residual = (sys * p0 - rhs).norm();
  if (out.equation_residual > std::sqrt(tol)) {
    out.gram = Matrix::Zero(k, k);
    out.min_eigenvalue = -1.0;
    return out;
  }
  auto to_gram = [&](const RealVector& par) {
    Matrix g = Matrix::Zero(k, k);
    for (int p = 0; p < np; ++p) g += par(p) * herm[p];
    return g;
  };
  const Matrix g0 = to_gram(p0);
  std::vector<Matrix> dirs;
  for (Eigen::Index i = rank; i < np; ++i) dirs.push_back(to_gram(svd.matrixV().col(i)));
  out.unique_candidate = dirs.empty();
  const auto best = detail::maximize_min_eigenvalue(g0, dirs, RealVector::Zero(static_cast<Eigen::Index>(dirs.size())),
                                                    false, std::max(tol, 1e-6), iters);
  Matrix g = g0;
  for (size_t i = 0; i < dirs.size(); ++i) g += best.t(static_cast<Eigen::Index>(i)) * dirs[i];
  out.gram = g;
  out.min_eigenvalue = best.value;
  out.realizable = best.value > tol * std::max(1.0, max_abs(g));
  return out;
}

}  // namespace qrelkit
