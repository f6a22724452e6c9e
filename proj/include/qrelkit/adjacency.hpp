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

// Operators between GNS spaces, the Schur product, the isomorphism
// Psi' : B(L^2(M), L^2(N)) -> N (x) M^op, and quantum adjacency operators.
//
// Psi'(|c(x)><c(y)|) = L_N(x) (x) L_M(sigma_{i/2}(y)*)^T acting on
// L^2(N) (x) conj(L^2(M)) = C^{d_N d_M}, which is row-major vec of
// Hilbert-Schmidt operators T : L^2(M) -> L^2(N). On such T it acts as
// T -> sum_j L_N(x_j) T L_M(sigma_{i/2}(y_j)*).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrelkit/qfunc.hpp"

namespace qrelkit {

class GNSOperator {
 public:
  GNSOperator() = default;
  GNSOperator(GNSSpace source, GNSSpace target, Matrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    require(matrix_.rows() == target_.dim() && matrix_.cols() == source_.dim(), "GNS operator has wrong shape");
  }

  const GNSSpace& source() const { return source_; }
  const GNSSpace& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  AlgebraElement apply(const AlgebraElement& x) const { return target_.element(matrix_ * source_.coords(x)); }

 private:
  GNSSpace source_;
  GNSSpace target_;
  Matrix matrix_;
};

inline GNSOperator operator_from_map(const GNSSpace& source, const GNSSpace& target,
                                     const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  Matrix m(target.dim(), source.dim());
  for (int k = 0; k < source.dim(); ++k) m.col(k) = target.coords(f(source.element(Vector::Unit(source.dim(), k))));
  return GNSOperator(source, target, std::move(m));
}

// x -> theta(x) as an operator L^2(N) -> L^2(M).
inline GNSOperator gns_operator_of(const CPMap& theta, const GNSSpace& source, const GNSSpace& target) {
  require(theta.source() == source.algebra() && theta.target() == target.algebra(), "spaces do not match the map");
  return GNSOperator(source, target,
                     target.coordinate_change() * theta.action() * source.inverse_coordinate_change());
}

inline CPMap cp_map_of(const GNSOperator& a, double tol = kDefaultTol) {
  return CPMap(a.source().algebra(), a.target().algebra(),
               a.target().inverse_coordinate_change() * a.matrix() * a.source().coordinate_change(), tol);
}

// m : L^2(M) (x) L^2(M) -> L^2(M), m(c(x) (x) c(y)) = c(xy).
inline Matrix multiplication_map(const GNSSpace& g) {
  const int d = g.dim();
  Matrix m(d, static_cast<Eigen::Index>(d) * d);
  std::vector<AlgebraElement> f;
  for (int k = 0; k < d; ++k) f.push_back(g.element(Vector::Unit(d, k)));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) m.col(static_cast<Eigen::Index>(k) * d + l) = g.coords(f[k] * f[l]);
  return m;
}

// A * B = m_N (A (x) B) m_M*.
inline GNSOperator schur_product(const GNSOperator& a, const GNSOperator& b) {
  require(a.source().algebra() == b.source().algebra() && a.target().algebra() == b.target().algebra(),
          "schur_product: operators act between different spaces");
  const Matrix mm = multiplication_map(a.source());
  const Matrix mn = multiplication_map(a.target());
  return GNSOperator(a.source(), a.target(), mn * kron(a.matrix(), b.matrix()) * mm.adjoint());
}

// A^dagger(x) = A(x*)*.
inline GNSOperator dagger(const GNSOperator& a) {
  return operator_from_map(a.source(), a.target(), [&](const AlgebraElement& x) { return a.apply(x.adjoint()).adjoint(); });
}

// J_M A* J_N : L^2(N) -> L^2(M).
inline GNSOperator kms_adjoint(const GNSOperator& a) {
  return GNSOperator(a.target(), a.source(),
                     a.source().j_permutation() * a.matrix().transpose() * a.target().j_permutation());
}

inline GNSOperator compose(const GNSOperator& b, const GNSOperator& a) {
  require(a.target().algebra() == b.source().algebra(), "compose: operators are not composable");
  return GNSOperator(a.source(), b.target(), b.matrix() * a.matrix());
}

// Psi'(|c(x)><c(y)|) for x in N, y in M.
inline Matrix psi_prime_rank_one(const GNSSpace& m, const GNSSpace& n, const AlgebraElement& x,
                                 const AlgebraElement& y) {
  return kron(n.left_action(x), m.left_action(m.modular_sigma(0.5 * kI, y).adjoint()).transpose());
}

inline Matrix psi_prime(const GNSOperator& a) {
  const GNSSpace& m = a.source();
  const GNSSpace& n = a.target();
  const Eigen::Index d = static_cast<Eigen::Index>(n.dim()) * m.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int k = 0; k < m.dim(); ++k)
    out += psi_prime_rank_one(m, n, n.element(a.matrix().col(k)), m.element(Vector::Unit(m.dim(), k)));
  return out;
}

// Inverse of Psi'. The coefficients of x in the basis L_N(e_p) (x) L_M(e_q)^T
// are read off with the Hilbert-Schmidt inner product; residual receives the
// distance of x from N (x) M^op.
inline GNSOperator psi_prime_inv(const Matrix& x, const GNSSpace& m, const GNSSpace& n, double* residual = nullptr) {
  const int dn = n.dim(), dm = m.dim();
  require(x.rows() == static_cast<Eigen::Index>(dn) * dm && x.cols() == x.rows(), "psi_prime_inv: wrong size");
  const auto& an = n.algebra();
  const auto& am = m.algebra();
  Matrix coeff(dn, dm);
  for (int p = 0; p < dn; ++p) {
    const auto ip = an.index_of(p);
    const int na = an.block_size(ip.block), on = an.coord_offset(ip.block);
    Matrix y = Matrix::Zero(dm, dm);
    for (int l = 0; l < na; ++l)
      y += x.block(static_cast<Eigen::Index>(on + ip.row * na + l) * dm,
                   static_cast<Eigen::Index>(on + ip.col * na + l) * dm, dm, dm);
    for (int q = 0; q < dm; ++q) {
      const auto iq = am.index_of(q);
      const int nb = am.block_size(iq.block), om = am.coord_offset(iq.block);
      Complex c = 0.0;
      for (int l = 0; l < nb; ++l) c += y(om + iq.col * nb + l, om + iq.row * nb + l);
      coeff(p, q) = c / static_cast<double>(na * nb);
    }
  }
  Matrix cn(dn, dn), w(dm, dm);
  for (int p = 0; p < dn; ++p) cn.col(p) = n.coords(an.basis(p));
  for (int q = 0; q < dm; ++q) w.col(q) = m.coords(m.modular_sigma(-0.5 * kI, am.basis(q).adjoint()));
  GNSOperator a(m, n, cn * coeff * w.adjoint());
  if (residual) *residual = rel_residual(psi_prime(a), x);
  return a;
}

// (phi_N (x) id)(x) for x in N (x) M^op, as an operator on conj(L^2(M)).
inline Matrix slice_state(const Matrix& x, const GNSSpace& m, const GNSSpace& n) {
  const int dn = n.dim(), dm = m.dim();
  const Vector xi = n.unit();
  Matrix out = Matrix::Zero(dm, dm);
  for (int a = 0; a < dn; ++a)
    for (int b = 0; b < dn; ++b)
      if (xi(a) != 0.0 && xi(b) != 0.0)
        out += std::conj(xi(a)) * xi(b) *
               x.block(static_cast<Eigen::Index>(a) * dm, static_cast<Eigen::Index>(b) * dm, dm, dm);
  return out;
}

struct Classification {
  bool cp = false;
  bool real = false;
  bool schur_idempotent = false;
  bool psi_projection = false;
  // (cp and idempotent) == (real and idempotent) == psi_projection.
  bool equivalences_hold = false;
  double min_eigenvalue = 0.0;
  double idempotency_residual = 0.0;
  double realness_residual = 0.0;
  double projection_residual = 0.0;
};

inline Classification classify(const GNSOperator& a, double tol = kDefaultTol) {
  Classification c;
  const Matrix x = psi_prime(a);
  const double scale = std::max(1.0, max_abs(x));
  const double herm = max_abs(x - x.adjoint());
  c.min_eigenvalue = min_eigenvalue(x) - herm;
  c.cp = herm <= tol * scale && c.min_eigenvalue >= -tol * scale;
  c.realness_residual = rel_residual(dagger(a).matrix(), a.matrix());
  c.real = c.realness_residual <= tol;
  c.idempotency_residual = rel_residual(schur_product(a, a).matrix(), a.matrix());
  c.schur_idempotent = c.idempotency_residual <= tol;
  c.projection_residual = std::max(herm, max_abs(x * x - x)) / scale;
  c.psi_projection = c.projection_residual <= tol;
  const bool p1 = c.cp && c.schur_idempotent, p2 = c.real && c.schur_idempotent;
  c.equivalences_hold = p1 == p2 && p2 == c.psi_projection;
  return c;
}

// Orthonormal basis (as vectorized operators) of the image of x >= 0.
inline OperatorSubspace image_of_positive(const Matrix& x, int rows, int cols, double tol = kDefaultTol) {
  const double herm = max_abs(x - x.adjoint());
  const double scale = std::max(1e-300, max_abs(x));
  if (herm > std::sqrt(tol) * std::max(1.0, scale)) throw InputError("element is not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x));
  const RealVector& ev = es.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  if (ev.size() && ev(0) < -std::sqrt(tol) * std::max(1.0, top)) throw InputError("element is not positive");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * top && ev(i) > 0.0) keep.push_back(i);
  Matrix onb(x.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c) onb.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return OperatorSubspace(rows, cols, onb);
}

// Three routes to the relation of a positive x in N (x) M^op.
// nabla_N^{1/4} Im(x) nabla_M^{1/4}.
inline OperatorSubspace relation_space_image(const Matrix& x, const GNSSpace& m, const GNSSpace& n,
                                             double tol = kDefaultTol) {
  return map_space(image_of_positive(x, n.dim(), m.dim(), tol), n.nabla_power(0.25), m.nabla_power(0.25), tol);
}
// N' nabla_N^{1/4} A nabla_M^{-1/4} M' with A = Psi'^{-1}(x).
inline OperatorSubspace relation_space_bimodule(const Matrix& x, const GNSSpace& m, const GNSSpace& n,
                                                double tol = kDefaultTol) {
  const GNSOperator a = psi_prime_inv(x, m, n);
  return bimodule_generate(n.commutant_basis(), {n.nabla_power(0.25) * a.matrix() * m.nabla_power(-0.25)},
                           m.commutant_basis(), tol);
}
// Q_N^{1/4} Im(x) Q_M^{1/4}, Q acting on the left.
inline OperatorSubspace relation_space_q(const Matrix& x, const GNSSpace& m, const GNSSpace& n,
                                         double tol = kDefaultTol) {
  return map_space(image_of_positive(x, n.dim(), m.dim(), tol), n.left_action(n.q_power(0.25)),
                   m.left_action(m.q_power(0.25)), tol);
}

inline QuantumRelation relation_of_positive(const Matrix& x, const GNSSpace& m, const GNSSpace& n,
                                            double tol = kDefaultTol) {
  const OperatorSubspace a = relation_space_image(x, m, n, tol);
  const OperatorSubspace b = relation_space_bimodule(x, m, n, tol);
  const OperatorSubspace c = relation_space_q(x, m, n, tol);
  if (!equal_spaces(a, b, std::sqrt(tol)) || !equal_spaces(a, c, std::sqrt(tol)))
    throw ConsistencyError("relation_of_positive: image, bimodule and Q-power routes disagree (dims " +
                           std::to_string(a.dim()) + ", " + std::to_string(b.dim()) + ", " +
                           std::to_string(c.dim()) + ")");
  return QuantumRelation(m.representation(), n.representation(), a);
}

// Psi'^{-1} of the projection onto nabla_N^{-1/4} V nabla_M^{-1/4}.
inline GNSOperator adjacency_of_relation(const QuantumRelation& v, const GNSSpace& m, const GNSSpace& n,
                                         double tol = kDefaultTol) {
  require(v.source().same_as(m.representation()) && v.target().same_as(n.representation()),
          "adjacency_of_relation: relation must live on the GNS representations");
  const OperatorSubspace w = map_space(v.space(), n.nabla_power(-0.25), m.nabla_power(-0.25), tol);
  double r = 0.0;
  GNSOperator a = psi_prime_inv(w.projection(), m, n, &r);
  if (r > std::sqrt(tol)) throw ConsistencyError("adjacency_of_relation: projection is not in N (x) M^op");
  return a;
}

struct ThetaOfAdjacency {
  CPMap theta;              // N -> M, the KMS adjoint of A
  QuantumRelation v_theta;  // relation of theta, from M to N
  QuantumRelation twisted;  // nabla_N^{1/4} V nabla_M^{-1/4}
  double distance = 0.0;
};

inline ThetaOfAdjacency theta_of_adjacency(const GNSOperator& a, double tol = kDefaultTol) {
  const GNSSpace& m = a.source();
  const GNSSpace& n = a.target();
  ThetaOfAdjacency out;
  out.theta = cp_map_of(kms_adjoint(a), std::sqrt(tol));
  out.v_theta = relation_of_cp(out.theta, m.representation(), n.representation(), tol);
  const QuantumRelation v = relation_of_positive(psi_prime(a), m, n, tol);
  out.twisted = QuantumRelation(m.representation(), n.representation(),
                                map_space(v.space(), n.nabla_power(0.25), m.nabla_power(-0.25), tol));
  out.distance = space_distance(out.v_theta.space(), out.twisted.space());
  if (out.distance > std::sqrt(tol))
    throw ConsistencyError("theta_of_adjacency: V^theta differs from nabla^{1/4} V nabla^{-1/4}");
  return out;
}

struct Coinjectivity {
  bool coinjective = false;
  std::optional<AlgebraElement> x0;  // A o (J A* J) = right multiplication by x0
  bool relation_flag = false;        // coinjectivity of the relation of A
};

inline Coinjectivity coinjectivity_criterion(const GNSOperator& a, double tol = kDefaultTol) {
  const GNSSpace& n = a.target();
  const Matrix b = a.matrix() * kms_adjoint(a).matrix();
  const double scale = std::max(1.0, max_abs(b));
  Coinjectivity out;
  bool commutes = true;
  for (const auto& g : n.algebra().generators()) {
    const Matrix l = n.left_action(g);
    if (max_abs(l * b - b * l) > std::sqrt(tol) * scale) commutes = false;
  }
  if (commutes) {
    const AlgebraElement x0 = n.element(b * n.unit());
    bool central = true;
    for (const auto& g : n.algebra().generators())
      if ((g * x0 - x0 * g).max_abs() > std::sqrt(tol) * scale) central = false;
    bool positive = true;
    for (const auto& blk : x0.blocks())
      if (min_eigenvalue(blk) < -std::sqrt(tol) * scale || max_abs(blk - blk.adjoint()) > std::sqrt(tol) * scale)
        positive = false;
    out.coinjective = central && positive;
    if (out.coinjective) out.x0 = x0;
  }
  out.relation_flag = properties(relation_of_positive(psi_prime(a), a.source(), n, tol), std::sqrt(tol)).coinjective;
  if (out.relation_flag != out.coinjective)
    throw ConsistencyError("coinjectivity_criterion: criterion disagrees with the relation's flag");
  return out;
}

struct HomAdjacency {
  GNSOperator a;                 // N -> M
  std::vector<Matrix> w;         // W_a : C^{n(a)} (x) K_a -> H_M (block-diagonal coordinates)
  std::vector<Matrix> t;         // W_a* Q_M^{-1/2} W_a
  std::vector<Matrix> v;         // positive invertible, u_a = v^{-1}
  std::vector<Matrix> u_blocks;  // u_a
  AlgebraElement u;              // element of M commuting with theta(N)
  std::vector<Claim> claims;
  bool ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  }
};

namespace detail {
// Gram-Schmidt on the columns of p in their natural order.
inline Matrix range_by_gram_schmidt(const Matrix& p, double tol) {
  std::vector<Vector> q;
  const double scale = std::max(1.0, max_abs(p));
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    Vector c = p.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : q) c -= b * b.dot(c);
    if (c.norm() > std::sqrt(tol) * scale) q.push_back(c / c.norm());
  }
  Matrix out(p.rows(), static_cast<Eigen::Index>(q.size()));
  for (size_t i = 0; i < q.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = q[i];
  return out;
}
}  // namespace detail

// Schur-idempotent CP adjacency operator of a *-homomorphism theta : N -> M:
// A(x) = Q_M^{-1/4} u^{1/2} theta(Q_N^{1/4} x Q_N^{1/4}) u^{1/2} Q_M^{-1/4},
// with u_a the inverse of v_a = n(a)^{-1} sum_ij (Q_{N,a}^{-1/2})_{ji} t_ij.
// The n(a)^{-1} matches the Markov normalization of phi_N.
inline HomAdjacency adjacency_of_hom(const Hom& theta, const Functional& phi_m, const Functional& phi_n,
                                     double tol = kDefaultTol) {
  const auto& n = theta.source();
  const auto& m = theta.target();
  require(phi_m.algebra() == m && phi_n.algebra() == n, "adjacency_of_hom: functionals do not match the map");
  const GNSSpace gm(phi_m), gn(phi_n);
  HomAdjacency out;
  const Matrix qm_mhalf = m.dense(gm.q_power(-0.5));
  const AlgebraElement qn_mhalf = gn.q_power(-0.5);
  Matrix u = Matrix::Zero(m.unit_dim(), m.unit_dim());
  Matrix u_half = u;
  for (int a = 0; a < n.num_blocks(); ++a) {
    const int na = n.block_size(a);
    const Matrix f = detail::range_by_gram_schmidt(m.dense(theta.apply(n.matrix_unit(a, 0, 0))), tol);
    const int r = static_cast<int>(f.cols());
    if (r == 0) {
      out.w.emplace_back(m.unit_dim(), 0);
      out.t.emplace_back(0, 0);
      out.v.emplace_back(0, 0);
      out.u_blocks.emplace_back(0, 0);
      continue;
    }
    Matrix w(m.unit_dim(), na * r);
    for (int i = 0; i < na; ++i) w.middleCols(i * r, r) = m.dense(theta.apply(n.matrix_unit(a, i, 0))) * f;
    const Matrix t = w.adjoint() * qm_mhalf * w;
    Matrix v = Matrix::Zero(r, r);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) v += qn_mhalf.block(a)(j, i) * t.block(i * r, j * r, r, r);
    v /= static_cast<double>(na);
    const double vmin = min_eigenvalue(v);
    // Residual: how far v is from Hermitian with spectrum above tol.
    const double pd_gap = std::max(max_abs(v - v.adjoint()), std::max(0.0, tol - vmin));
    out.claims.push_back({"v_" + std::to_string(a) + " positive definite", r, r, pd_gap,
                          vmin > tol && max_abs(v - v.adjoint()) <= std::sqrt(tol)});
    const Matrix ua = hermitian_power(v, -1.0);
    u += w * kron(identity(na), ua) * w.adjoint();
    u_half += w * kron(identity(na), hermitian_power(v, -0.5)) * w.adjoint();
    out.w.push_back(w);
    out.t.push_back(t);
    out.v.push_back(v);
    out.u_blocks.push_back(ua);
  }
  double off = 0.0;
  out.u = m.from_dense(u, &off);
  const AlgebraElement uh = m.from_dense(u_half);
  out.claims.push_back({"u lies in M", 0, 0, off, off <= std::sqrt(tol)});
  const AlgebraElement qn_q = gn.q_power(0.25), qm_mq = gm.q_power(-0.25);
  out.a = operator_from_map(gn, gm, [&](const AlgebraElement& x) {
    return qm_mq * uh * theta.apply(qn_q * x * qn_q) * uh * qm_mq;
  });

  const Classification c = classify(out.a, std::sqrt(tol));
  out.claims.push_back({"A completely positive", 0, 0, std::max(0.0, -c.min_eigenvalue), c.cp});
  out.claims.push_back({"A * A = A", 0, 0, c.idempotency_residual, c.schur_idempotent});
  const OperatorSubspace lhs =
      bimodule_generate(gm.commutant_basis(), {gm.nabla_power(0.25) * out.a.matrix() * gn.nabla_power(-0.25)},
                        gn.commutant_basis(), tol);
  const QuantumRelation vt = relation_of_hom(theta, gm.representation(), gn.representation(), tol);
  out.claims.push_back(
      detail::space_claim("M' nabla^{1/4} A nabla^{-1/4} N' = V^{theta*}", lhs, adjoint_space(vt.space()), std::sqrt(tol)));
  return out;
}

struct StatePreservation {
  bool preserves = false;
  double state_residual = 0.0;   // |phi_N(A b) - phi_M(b)|
  double adjoint_residual = 0.0; // |A* 1 - 1|
  double slice_residual = 0.0;   // |(phi_N (x) id) Psi'(A) - 1|
};

// phi_N o A = phi_M, A* unital and (phi_N (x) id) Psi'(A) = 1, computed
// separately; they must agree.
inline StatePreservation state_preservation_check(const GNSOperator& a, double tol = kDefaultTol) {
  const GNSSpace& m = a.source();
  const GNSSpace& n = a.target();
  StatePreservation s;
  for (int k = 0; k < m.algebra().dim(); ++k) {
    const AlgebraElement b = m.algebra().basis(k);
    s.state_residual = std::max(s.state_residual, std::abs(n.functional()(a.apply(b)) - m.functional()(b)));
  }
  s.adjoint_residual = (a.matrix().adjoint() * n.unit() - m.unit()).cwiseAbs().maxCoeff();
  s.slice_residual = max_abs(slice_state(psi_prime(a), m, n) - identity(m.dim()));
  const double scale = std::max(1.0, max_abs(a.matrix()));
  const bool p1 = s.state_residual <= std::sqrt(tol) * scale;
  const bool p2 = s.adjoint_residual <= std::sqrt(tol) * scale;
  const bool p3 = s.slice_residual <= std::sqrt(tol) * scale;
  if (p1 != p2 || p2 != p3) throw ConsistencyError("state_preservation_check: the three criteria disagree");
  s.preserves = p1;
  return s;
}

}  // namespace qrelkit
