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

// Quantum relations: weak* closed N'-M' bimodules V in B(H, K), for
// M on H (source) and N on K (target).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrelkit/mvnalg.hpp"
#include "qrelkit/opspace.hpp"

namespace qrelkit {

class QuantumRelation {
 public:
  QuantumRelation() = default;
  QuantumRelation(RepresentedAlgebra source, RepresentedAlgebra target, OperatorSubspace space)
      : source_(std::move(source)), target_(std::move(target)), space_(std::move(space)) {
    require(space_.rows() == target_.hilbert_dim() && space_.cols() == source_.hilbert_dim(),
            "relation space does not live in B(H_source, H_target)");
  }

  const RepresentedAlgebra& source() const { return source_; }
  const RepresentedAlgebra& target() const { return target_; }
  const OperatorSubspace& space() const { return space_; }
  int dim() const { return space_.dim(); }

 private:
  RepresentedAlgebra source_;
  RepresentedAlgebra target_;
  OperatorSubspace space_;
};

// Largest residual of n' v and v m' outside the space, over commutant
// generators and basis elements v.
inline double bimodule_residual(const RepresentedAlgebra& source, const RepresentedAlgebra& target,
                                const OperatorSubspace& space) {
  double worst = 0.0;
  const auto basis = space.basis();
  for (const auto& c : target.commutant_generators())
    for (const auto& v : basis) worst = std::max(worst, space.residual(c * v));
  for (const auto& c : source.commutant_generators())
    for (const auto& v : basis) worst = std::max(worst, space.residual(v * c));
  return worst;
}

// With close = true the N'-M' bimodule generated by gens is returned;
// otherwise the span must already be a bimodule.
inline QuantumRelation make_relation(const RepresentedAlgebra& source, const RepresentedAlgebra& target,
                                     const std::vector<Matrix>& gens, bool close, double tol = kDefaultTol) {
  const int rows = target.hilbert_dim(), cols = source.hilbert_dim();
  for (const auto& g : gens)
    require(g.rows() == rows && g.cols() == cols, "generator shape does not match representations");
  if (close) {
    if (gens.empty()) return QuantumRelation(source, target, zero_space(rows, cols));
    return QuantumRelation(source, target,
                           bimodule_generate(target.commutant_basis(), gens, source.commutant_basis(), tol));
  }
  OperatorSubspace s = span_of(rows, cols, gens, tol);
  const double r = bimodule_residual(source, target, s);
  if (r > std::sqrt(tol))
    throw ValidationError("span of generators is not a bimodule (residual " + std::to_string(r) + ")");
  return QuantumRelation(source, target, std::move(s));
}

inline OperatorSubspace commutant_space(const RepresentedAlgebra& r) {
  return span_of(r.hilbert_dim(), r.hilbert_dim(), r.commutant_basis());
}

// The identity relation M' on H.
inline QuantumRelation identity_relation(const RepresentedAlgebra& r) {
  return QuantumRelation(r, r, commutant_space(r));
}

// V o W: W from A to B, V from B to C.
inline QuantumRelation compose_relations(const QuantumRelation& v, const QuantumRelation& w,
                                         double tol = kDefaultTol) {
  require(w.target().same_as(v.source()), "compose: middle representations differ");
  return QuantumRelation(w.source(), v.target(), compose_spaces(v.space(), w.space(), tol));
}

inline QuantumRelation adjoint_relation(const QuantumRelation& v) {
  return QuantumRelation(v.target(), v.source(), adjoint_space(v.space()));
}

// V^T from N^op to M^op on the conjugate spaces.
inline QuantumRelation transpose_relation(const QuantumRelation& v) {
  return QuantumRelation(opposite(v.target()), opposite(v.source()), transpose_space(v.space()));
}

inline bool same_relation(const QuantumRelation& a, const QuantumRelation& b, double tol = kDefaultTol) {
  return a.source().same_as(b.source()) && a.target().same_as(b.target()) &&
         equal_spaces(a.space(), b.space(), tol);
}

struct RelationFlags {
  bool coinjective = false;   // V V* in N'
  bool cosurjective = false;  // V* V contains M'
  bool injective = false;     // V* V in M'
  bool surjective = false;    // V V* contains N'
  bool partial_function = false;
  bool function = false;
  std::optional<bool> symmetric;  // only when source and target agree
  std::optional<bool> reflexive;
};

inline RelationFlags properties(const QuantumRelation& v, double tol = kDefaultTol) {
  RelationFlags f;
  const QuantumRelation vs = adjoint_relation(v);
  const OperatorSubspace vvs = compose_spaces(v.space(), vs.space(), tol);
  const OperatorSubspace vsv = compose_spaces(vs.space(), v.space(), tol);
  const OperatorSubspace np = commutant_space(v.target());
  const OperatorSubspace mp = commutant_space(v.source());
  f.coinjective = is_subspace_of(vvs, np, tol);
  f.surjective = is_subspace_of(np, vvs, tol);
  f.injective = is_subspace_of(vsv, mp, tol);
  f.cosurjective = is_subspace_of(mp, vsv, tol);
  f.partial_function = f.coinjective;
  f.function = f.coinjective && f.cosurjective;
  if (v.source().same_as(v.target())) {
    f.symmetric = equal_spaces(v.space(), vs.space(), tol);
    f.reflexive = contains(v.space(), identity(v.source().hilbert_dim()), tol);
  }
  return f;
}

// Central projection z of N with V V* = z N'. V must be coinjective.
inline AlgebraElement central_support(const QuantumRelation& v, double tol = kDefaultTol) {
  const OperatorSubspace vvs = compose_spaces(v.space(), adjoint_space(v.space()), tol);
  const RepresentedAlgebra& n = v.target();
  if (!is_subspace_of(vvs, commutant_space(n), tol))
    throw InputError("central_support: relation is not coinjective");
  AlgebraElement z = n.algebra().zero();
  std::vector<Matrix> gens;
  for (int a = 0; a < n.algebra().num_blocks(); ++a) {
    if (!contains(vvs, n.block_projection(a), tol)) continue;
    z = z + n.algebra().block_unit(a);
  }
  const Matrix zz = n.embed(z);
  for (const auto& c : n.commutant_basis()) gens.push_back(zz * c);
  const OperatorSubspace zn = span_of(n.hilbert_dim(), n.hilbert_dim(), gens, tol, 1.0);
  if (!equal_spaces(zn, vvs, std::sqrt(tol)))
    throw ConsistencyError("central_support: V V* is not of the form z N'");
  return z;
}

struct BlockComponent {
  int source_block;
  int target_block;
  OperatorSubspace space;
};

// Components 1_y V 1_x over pairs of minimal central projections.
inline std::vector<BlockComponent> blocks(const QuantumRelation& v, double tol = kDefaultTol) {
  std::vector<BlockComponent> out;
  const auto basis = v.space().basis();
  for (int x = 0; x < v.source().algebra().num_blocks(); ++x) {
    const Matrix px = v.source().block_projection(x);
    for (int y = 0; y < v.target().algebra().num_blocks(); ++y) {
      const Matrix py = v.target().block_projection(y);
      // Compressions of a unit-norm basis: cut relative to 1, not to the
      // (possibly rounding-sized) norms of the compressed generators.
      Matrix g(v.space().onb().rows(), static_cast<Eigen::Index>(basis.size()));
      for (size_t i = 0; i < basis.size(); ++i) g.col(static_cast<Eigen::Index>(i)) = vec(py * basis[i] * px);
      out.push_back({x, y, OperatorSubspace(v.space().rows(), v.space().cols(), orthonormal_range(g, tol, 1.0))});
    }
  }
  return out;
}

inline OperatorSubspace sum_of_blocks(const QuantumRelation& v, const std::vector<BlockComponent>& parts) {
  OperatorSubspace s = zero_space(v.space().rows(), v.space().cols());
  for (const auto& p : parts) s = sum_spaces(s, p.space);
  return s;
}

// l^inf(X) acting on C^X by diagonal matrices.
inline RepresentedAlgebra classical_rep(int size) {
  return RepresentedAlgebra(MultiMatrixAlgebra(std::vector<int>(size, 1)), std::vector<int>(size, 1));
}

// Classical relation R (pairs (y, x)) between commutative algebras: the span
// of the full corners 1_y B(H, K) 1_x.

inline QuantumRelation from_classical(const RepresentedAlgebra& source, const RepresentedAlgebra& target,
                                      const std::vector<std::pair<int, int>>& pairs) {
  require(source.algebra().is_commutative() && target.algebra().is_commutative(),
          "classical relations need commutative algebras");
  std::vector<std::pair<int, int>> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Vector> cols;
  for (auto [y, x] : sorted) {
    require(y >= 0 && y < target.algebra().num_blocks() && x >= 0 && x < source.algebra().num_blocks(),
            "classical pair out of range");
    const Matrix f = target.block_range(y), g = source.block_range(x);
    for (Eigen::Index i = 0; i < f.cols(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) cols.push_back(vec(f.col(i) * g.col(j).adjoint()));
  }
  Matrix onb(static_cast<Eigen::Index>(target.hilbert_dim()) * source.hilbert_dim(),
             static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) onb.col(static_cast<Eigen::Index>(c)) = cols[c];
  return QuantumRelation(source, target, OperatorSubspace(target.hilbert_dim(), source.hilbert_dim(), onb));
}

inline std::vector<std::pair<int, int>> to_classical(const QuantumRelation& v, double tol = kDefaultTol) {
  require(v.source().algebra().is_commutative() && v.target().algebra().is_commutative(),
          "classical export needs commutative algebras");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& b : blocks(v, tol))
    if (b.space.dim() > 0) pairs.emplace_back(b.target_block, b.source_block);
  std::sort(pairs.begin(), pairs.end());
  if (!equal_spaces(from_classical(v.source(), v.target(), pairs).space(), v.space(), std::sqrt(tol)))
    throw ConsistencyError("to_classical: relation is not a union of full corners");
  return pairs;
}

// u : H_new -> H_old (x) C^aux with u pi_new(x) = (pi_old(x) (x) 1) u.
struct Isometry {
  RepresentedAlgebra old_rep;
  RepresentedAlgebra new_rep;
  Matrix u;
  int aux_dim = 1;
};

inline double isometry_residual(const Isometry& iso) {
  const int dn = iso.new_rep.hilbert_dim();
  double r = max_abs(iso.u.adjoint() * iso.u - identity(dn));
  for (const auto& g : iso.old_rep.algebra().generators())
    r = std::max(r, max_abs(iso.u * iso.new_rep.embed(g) - kron(iso.old_rep.embed(g), identity(iso.aux_dim)) * iso.u));
  return r;
}

// Canonical intertwining isometry between two representations of the same
// algebra: every multiplicity copy of the new one lands on the first copy
// of the old one, tagged by an auxiliary index.
inline Isometry standard_isometry(const RepresentedAlgebra& old_rep, const RepresentedAlgebra& new_rep) {
  require(old_rep.algebra() == new_rep.algebra(), "standard_isometry: algebras differ");
  const auto& m = old_rep.algebra();
  int aux = 1;
  for (int k : new_rep.multiplicities()) aux = std::max(aux, k);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(old_rep.hilbert_dim()) * aux, new_rep.hilbert_dim());
  for (int a = 0; a < m.num_blocks(); ++a) {
    const int n = m.block_size(a), kn = new_rep.multiplicity(a), ko = old_rep.multiplicity(a);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < kn; ++k)
        u((old_rep.std_offset(a) + i * ko) * aux + k, new_rep.std_offset(a) + i * kn + k) = 1.0;
  }
  u = kron(old_rep.block_unitary(), identity(aux)) * u * new_rep.block_unitary().adjoint();
  return {old_rep, new_rep, u, aux};
}

// u_N* (V (x) B(L_M, L_N)) u_M, a relation between the new representations.
inline QuantumRelation transport(const QuantumRelation& v, const Isometry& iso_m, const Isometry& iso_n,
                                 double tol = kDefaultTol) {
  require(iso_m.old_rep.same_as(v.source()) && iso_n.old_rep.same_as(v.target()),
          "transport: isometries do not start at the relation's representations");
  require(iso_m.u.rows() == static_cast<Eigen::Index>(v.source().hilbert_dim()) * iso_m.aux_dim &&
              iso_n.u.rows() == static_cast<Eigen::Index>(v.target().hilbert_dim()) * iso_n.aux_dim,
          "transport: isometry shape mismatch");
  std::vector<Matrix> gens;
  for (const auto& b : v.space().basis())
    for (int i = 0; i < iso_n.aux_dim; ++i)
      for (int j = 0; j < iso_m.aux_dim; ++j) {
        Matrix e = Matrix::Zero(iso_n.aux_dim, iso_m.aux_dim);
        e(i, j) = 1.0;
        gens.push_back(iso_n.u.adjoint() * kron(b, e) * iso_m.u);
      }
  const int rows = iso_n.new_rep.hilbert_dim(), cols = iso_m.new_rep.hilbert_dim();
  return QuantumRelation(iso_m.new_rep, iso_n.new_rep, span_of(rows, cols, gens, tol));
}

inline QuantumRelation transport(const QuantumRelation& v, const RepresentedAlgebra& new_source,
                                 const RepresentedAlgebra& new_target, double tol = kDefaultTol) {
  return transport(v, standard_isometry(v.source(), new_source), standard_isometry(v.target(), new_target), tol);
}

// U from M to N and V from N to M with V o U = M' and U o V = N'.
inline bool is_invertible_pair(const QuantumRelation& u, const QuantumRelation& v, double tol = kDefaultTol) {
  require(u.source().same_as(v.target()) && u.target().same_as(v.source()),
          "is_invertible_pair: relations are not opposite");
  const bool inv = equal_spaces(compose_relations(v, u, tol).space(), commutant_space(u.source()), tol) &&
                   equal_spaces(compose_relations(u, v, tol).space(), commutant_space(u.target()), tol);
  if (inv && properties(u, tol).partial_function && !equal_spaces(adjoint_relation(u).space(), v.space(), std::sqrt(tol)))
    throw ConsistencyError("invertible partial function whose inverse is not its adjoint");
  return inv;
}

}  // namespace qrelkit
