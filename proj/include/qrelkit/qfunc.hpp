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

// *-homomorphisms theta : N -> M and their relations
// V^theta = {v : y v = v theta(y) for all y in N}.

#include <string>
#include <utility>
#include <vector>

#include "qrelkit/cpmap.hpp"

namespace qrelkit {

class Hom {
 public:
  Hom() = default;
  explicit Hom(CPMap map) : map_(std::move(map)) {
    if (!map_.is_hom()) throw ValidationError("map is not a *-homomorphism");
  }
  const CPMap& map() const { return map_; }
  const MultiMatrixAlgebra& source() const { return map_.source(); }
  const MultiMatrixAlgebra& target() const { return map_.target(); }
  AlgebraElement apply(const AlgebraElement& y) const { return map_.apply(y); }
  AlgebraElement unit_image() const { return map_.apply(map_.source().one()); }

 private:
  CPMap map_;
};

// Intertwiner space of theta, from M (on H) to N (on K).
inline QuantumRelation relation_of_hom(const Hom& theta, const RepresentedAlgebra& m_rep,
                                       const RepresentedAlgebra& n_rep, double tol = kDefaultTol) {
  require(theta.source() == n_rep.algebra() && theta.target() == m_rep.algebra(),
          "relation_of_hom: representations do not match the map");
  const int dk = n_rep.hilbert_dim(), dh = m_rep.hilbert_dim();
  const auto gens = theta.source().generators();
  const Eigen::Index d = static_cast<Eigen::Index>(dk) * dh;
  Matrix sys(static_cast<Eigen::Index>(gens.size()) * d, d);
  for (size_t g = 0; g < gens.size(); ++g) {
    const Matrix y = n_rep.embed(gens[g]);
    const Matrix ty = m_rep.embed(theta.apply(gens[g]));
    sys.block(static_cast<Eigen::Index>(g) * d, 0, d, d) = kron(y, identity(dh)) - kron(identity(dk), ty.transpose());
  }
  QuantumRelation v(m_rep, n_rep, OperatorSubspace(dk, dh, nullspace(sys, tol, 1.0)));
  if (!properties(v, std::sqrt(tol)).coinjective)
    throw ConsistencyError("relation_of_hom: intertwiner space is not coinjective");
  return v;
}

struct HomRecovery {
  Hom hom;
  double residual = 0.0;  // largest |theta(y) v* - v* y|
};

// Inverse of relation_of_hom on coinjective relations: e is the projection
// onto the span of the ranges of v*, and theta(y) is the solution of
// theta(y) v* = v* y supported on e.
inline HomRecovery hom_of_relation(const QuantumRelation& v, double tol = kDefaultTol) {
  if (!properties(v, tol).coinjective) throw InputError("hom_of_relation: relation is not coinjective");
  const RepresentedAlgebra& m_rep = v.source();
  const RepresentedAlgebra& n_rep = v.target();
  const int dk = n_rep.hilbert_dim(), dh = m_rep.hilbert_dim();
  const auto basis = v.space().basis();
  const Eigen::Index kk = static_cast<Eigen::Index>(basis.size());
  Matrix r(dh, kk * dk);
  for (Eigen::Index i = 0; i < kk; ++i) r.middleCols(i * dk, dk) = basis[i].adjoint();
  const Matrix r_pinv = pseudo_inverse(r, tol);
  const auto& n = n_rep.algebra();
  const auto& m = m_rep.algebra();
  Matrix action(m.dim(), n.dim());
  double worst = 0.0, worst_embed = 0.0;
  for (int q = 0; q < n.dim(); ++q) {
    const Matrix y = n_rep.embed(n.basis(q));
    Matrix s(dh, kk * dk);
    for (Eigen::Index i = 0; i < kk; ++i) s.middleCols(i * dk, dk) = basis[i].adjoint() * y;
    const Matrix x = s * r_pinv;
    worst = std::max(worst, max_abs(x * r - s));
    double re = 0.0;
    action.col(q) = m.coords(m_rep.unembed(x, &re));
    worst_embed = std::max(worst_embed, re);
  }
  if (worst_embed > std::sqrt(tol)) throw ConsistencyError("hom_of_relation: recovered map leaves M");
  CPMap map(n, m, std::move(action), std::sqrt(tol));
  if (!map.is_hom()) throw ConsistencyError("hom_of_relation: recovered map is not a *-homomorphism");
  return {Hom(std::move(map)), worst};
}

inline int numerical_rank(const Matrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > tol * std::max(s(0), 1.0)) ++r;
  return r;
}

// Commutant of theta(N) inside B(H).
inline OperatorSubspace image_commutant(const Hom& theta, const RepresentedAlgebra& m_rep, double tol = kDefaultTol) {
  const int dh = m_rep.hilbert_dim();
  const auto gens = theta.source().generators();
  const Eigen::Index d = static_cast<Eigen::Index>(dh) * dh;
  Matrix sys(static_cast<Eigen::Index>(gens.size()) * d, d);
  for (size_t g = 0; g < gens.size(); ++g) {
    const Matrix t = m_rep.embed(theta.apply(gens[g]));
    sys.block(static_cast<Eigen::Index>(g) * d, 0, d, d) = kron(t, identity(dh)) - kron(identity(dh), t.transpose());
  }
  return OperatorSubspace(dh, dh, nullspace(sys, tol, 1.0));
}

struct PropertyReport {
  std::vector<Claim> claims;
  bool ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  }
};

namespace detail {
inline Claim iff_claim(const std::string& name, bool lhs, bool rhs) {
  return {name, lhs ? 1 : 0, rhs ? 1 : 0, lhs == rhs ? 0.0 : 1.0, lhs == rhs};
}
inline Claim space_claim(const std::string& name, const OperatorSubspace& a, const OperatorSubspace& b, double tol) {
  const double d = space_distance(a, b);
  return {name, a.dim(), b.dim(), d, a.dim() == b.dim() && d <= tol};
}
}  // namespace detail

// Central projection z of N with ker theta = (1 - z) N, read off V^theta and
// cross-checked against the kernel of the action matrix.
inline AlgebraElement kernel_projection(const Hom& theta, const RepresentedAlgebra& m_rep,
                                        const RepresentedAlgebra& n_rep, double tol = kDefaultTol) {
  const QuantumRelation v = relation_of_hom(theta, m_rep, n_rep, tol);
  const AlgebraElement z = central_support(v, std::sqrt(tol));
  const auto& n = theta.source();
  const Matrix ker = nullspace(theta.map().action(), tol, 1.0);
  std::vector<Vector> cols;
  for (int a = 0; a < n.num_blocks(); ++a) {
    if (z.block(a)(0, 0).real() > 0.5) continue;
    for (int k = 0; k < n.block_size(a) * n.block_size(a); ++k)
      cols.push_back(Vector::Unit(n.dim(), n.coord_offset(a) + k));
  }
  Matrix expected(n.dim(), static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) expected.col(static_cast<Eigen::Index>(c)) = cols[c];
  const OperatorSubspace a(n.dim(), 1, ker), b(n.dim(), 1, expected);
  if (!equal_spaces(a, b, std::sqrt(tol)))
    throw ConsistencyError("kernel_projection: ker theta is not (1 - z) N");
  return z;
}

// Equivalences between properties of theta and of V = V^theta.
inline PropertyReport property_dictionary(const Hom& theta, const QuantumRelation& v, double tol = kDefaultTol) {
  PropertyReport rep;
  const RelationFlags f = properties(v, tol);
  const CPMap& map = theta.map();
  const auto& n = theta.source();
  const auto& m = theta.target();
  const int rank = numerical_rank(map.action(), tol);
  const bool injective = rank == n.dim();
  const bool surjective = rank == m.dim();

  // theta(1) central and theta(N) = theta(1) M.
  const AlgebraElement e = theta.unit_image();
  bool central = true;
  for (int k = 0; k < m.dim() && central; ++k) {
    const AlgebraElement b = m.basis(k);
    central = (e * b - b * e).max_abs() <= std::sqrt(tol);
  }
  std::vector<Matrix> img, corner;
  for (int k = 0; k < n.dim(); ++k) img.push_back(map.action().col(k));
  for (int k = 0; k < m.dim(); ++k) corner.push_back(m.coords(e * m.basis(k)));
  const OperatorSubspace img_space = span_of(m.dim(), 1, img, tol, 1.0);
  const OperatorSubspace corner_space = span_of(m.dim(), 1, corner, tol, 1.0);
  const bool full_corner = central && equal_spaces(img_space, corner_space, std::sqrt(tol));

  rep.claims.push_back(detail::iff_claim("unital(theta) <=> function(V)", map.is_unital(), f.function));
  rep.claims.push_back(detail::iff_claim("injective(theta) <=> surjective(V)", injective, f.surjective));
  rep.claims.push_back(detail::iff_claim("injective(V) <=> theta(1) central and theta(N) = theta(1) M",
                                         f.injective, full_corner));
  if (map.is_unital())
    rep.claims.push_back(detail::iff_claim("unital: surjective(theta) <=> injective(V)", surjective, f.injective));

  // V* V = theta(1) theta(N)'.
  const RepresentedAlgebra& m_rep = v.source();
  const OperatorSubspace comm = image_commutant(theta, m_rep, tol);
  const Matrix ee = m_rep.embed(e);
  std::vector<Matrix> g;
  for (const auto& c : comm.basis()) g.push_back(ee * c);
  const OperatorSubspace rhs = span_of(m_rep.hilbert_dim(), m_rep.hilbert_dim(), g, tol, 1.0);
  const OperatorSubspace lhs = compose_spaces(adjoint_space(v.space()), v.space(), tol);
  rep.claims.push_back(detail::space_claim("V* V = theta(1) theta(N)'", lhs, rhs, std::sqrt(tol)));

  // ker theta = (1 - z) N with z the central support of V.
  const AlgebraElement z = central_support(v, std::sqrt(tol));
  std::vector<Matrix> kz;
  for (int k = 0; k < n.dim(); ++k) kz.push_back(n.coords((n.one() - z) * n.basis(k)));
  const OperatorSubspace kernel_expected = span_of(n.dim(), 1, kz, tol, 1.0);
  const OperatorSubspace kernel_actual(n.dim(), 1, nullspace(map.action(), tol, 1.0));
  rep.claims.push_back(detail::space_claim("ker theta = (1 - z) N", kernel_actual, kernel_expected, std::sqrt(tol)));
  return rep;
}

// theta* (x) = theta^{-1}(theta(1) x), defined when V^theta is injective and
// coinjective. Its relation is the adjoint of V^theta.
inline Hom theta_star(const Hom& theta, const RepresentedAlgebra& m_rep, const RepresentedAlgebra& n_rep,
                      double tol = kDefaultTol) {
  const QuantumRelation v = relation_of_hom(theta, m_rep, n_rep, tol);
  const RelationFlags f = properties(v, tol);
  if (!(f.injective && f.coinjective)) throw InputError("theta_star: V^theta must be injective and coinjective");
  const auto& n = theta.source();
  const auto& m = theta.target();
  const AlgebraElement e = theta.unit_image();
  const Matrix pinv = pseudo_inverse(theta.map().action(), tol);
  Matrix action(n.dim(), m.dim());
  double worst = 0.0;
  for (int k = 0; k < m.dim(); ++k) {
    const Vector target = m.coords(e * m.basis(k));
    const Vector y = pinv * target;
    worst = std::max(worst, max_abs(theta.map().action() * y - target));
    action.col(k) = y;
  }
  if (worst > std::sqrt(tol)) throw ConsistencyError("theta_star: theta(1) M is not the image of theta");
  Hom star(CPMap(m, n, std::move(action), std::sqrt(tol)));
  const QuantumRelation vs = relation_of_hom(star, n_rep, m_rep, tol);
  if (!equal_spaces(vs.space(), adjoint_space(v.space()), std::sqrt(tol)))
    throw ConsistencyError("theta_star: relation of theta* is not (V^theta)*");
  return star;
}

}  // namespace qrelkit
