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

// Seeded randomized verification suites. Trial t of a suite draws its
// instance from Rng(derive_seed(seed, t)), so any failing trial can be
// replayed alone from the reported seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrelkit/construct.hpp"
#include "qrelkit/random.hpp"

namespace qrelkit::suites {

// Accumulates claims for one trial; residuals are compared against tol.
class Checks {
 public:
  explicit Checks(double tol) : tol_(tol) {}

  void residual(const std::string& name, double r) { residual(name, r, tol_); }
  void residual(const std::string& name, double r, double tol) { claims_.push_back({name, 0, 0, r, r <= tol}); }
  void space(const std::string& name, const OperatorSubspace& a, const OperatorSubspace& b) {
    claims_.push_back(detail::space_claim(name, a, b, tol_));
  }
  void truth(const std::string& name, bool ok) { claims_.push_back({name, 0, 0, ok ? 0.0 : 1.0, ok}); }
  void equal_int(const std::string& name, int lhs, int rhs) {
    claims_.push_back({name, lhs, rhs, lhs == rhs ? 0.0 : 1.0, lhs == rhs});
  }
  void merge(const std::vector<Claim>& cs, const std::string& prefix = "") {
    for (auto c : cs) {
      c.claim = prefix + c.claim;
      claims_.push_back(std::move(c));
    }
  }
  double tol() const { return tol_; }
  const std::vector<Claim>& claims() const { return claims_; }

 private:
  double tol_;
  std::vector<Claim> claims_;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double worst_residual = 0.0;
  int claims = 0;
  std::vector<Claim> failures;
  std::string error;  // exception text, if the trial threw
  bool passed() const { return failures.empty() && error.empty(); }
};

struct SuiteReport {
  std::string name;
  int criterion = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<TrialRecord> records;
  bool passed() const {
    return std::all_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.passed(); });
  }
  double worst_residual() const {
    double w = 0.0;
    for (const auto& r : records) w = std::max(w, r.worst_residual);
    return w;
  }
};

using TrialFn = std::function<void(Rng&, int, const random::Limits&, Checks&)>;

struct SuiteInfo {
  std::string name;
  int criterion;
  int default_trials;
  double default_tol;
  TrialFn run;
};

namespace detail {

inline GNSOperator random_gns_operator(Rng& rng, const GNSSpace& m, const GNSSpace& n) {
  return GNSOperator(m, n, random::ginibre(rng, n.dim(), m.dim()));
}

inline GNSOperator rank_one(const GNSSpace& m, const GNSSpace& n, const AlgebraElement& x, const AlgebraElement& y) {
  return GNSOperator(m, n, n.coords(x) * m.coords(y).adjoint());
}

// Projection in N (x) M^op: positive spectral projection of a random
// self-adjoint element Psi'(T).
inline Matrix random_projection(Rng& rng, const GNSSpace& m, const GNSSpace& n) {
  const Matrix x = hermitian_part(psi_prime(random_gns_operator(rng, m, n)));
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  Matrix p = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (es.eigenvalues()(i) > 0.0) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

// Positive element p y* y p of N (x) M^op with p a random projection, so
// the associated relation is usually proper.
inline Matrix random_positive(Rng& rng, const GNSSpace& m, const GNSSpace& n) {
  const Matrix p = random_projection(rng, m, n);
  const Matrix y = psi_prime(random_gns_operator(rng, m, n));
  return hermitian_part(p * y.adjoint() * y * p);
}

inline Functional maybe_tracial(Rng& rng, const MultiMatrixAlgebra& m, bool tracial) {
  return tracial ? Functional::markov_trace(m) : random::functional(rng, m);
}

inline bool flags_equal(const RelationFlags& a, const RelationFlags& b) {
  return a.coinjective == b.coinjective && a.cosurjective == b.cosurjective && a.injective == b.injective &&
         a.surjective == b.surjective && a.partial_function == b.partial_function && a.function == b.function &&
         a.symmetric == b.symmetric && a.reflexive == b.reflexive;
}

inline std::vector<std::pair<int, int>> random_pairs(Rng& rng, int ny, int nx) {
  std::vector<std::pair<int, int>> r;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      if (rng.coin(0.4)) r.emplace_back(y, x);
  return r;
}

// ---------------------------------------------------------------------------
// 1. GNS coordinates and modular data.
inline void gns_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  const MultiMatrixAlgebra m = random::algebra(rng, lim);
  const Functional phi = maybe_tracial(rng, m, trial % 5 == 0);
  const GNSSpace g(phi);
  const AlgebraElement x = random::element(rng, m), y = random::element(rng, m);
  const Complex lhs = g.coords(x).dot(g.coords(y));
  const Complex rhs = phi(x.adjoint() * y);
  c.residual("<c(x), c(y)> = Tr_M(Q x* y)", std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  c.residual("element(coords(x)) = x", (g.element(g.coords(x)) - x).max_abs());
  c.residual("L(x) c(y) = c(xy)", (g.left_action(x) * g.coords(y) - g.coords(x * y)).cwiseAbs().maxCoeff() /
                                      std::max(1.0, g.coords(x * y).cwiseAbs().maxCoeff()));

  // J M J = M'.
  std::vector<Matrix> jmj;
  for (const auto& b : m.basis_elements()) jmj.push_back(g.j_conjugate(g.left_action(b)));
  const int d = g.dim();
  c.space("J M J = M'", span_of(d, d, jmj), span_of(d, d, g.commutant_basis()));
  c.residual("J^2 = 1", (g.apply_j(g.apply_j(g.coords(x))) - g.coords(x)).cwiseAbs().maxCoeff() /
                            std::max(1.0, g.coords(x).cwiseAbs().maxCoeff()));

  // sigma_z o sigma_w = sigma_{z+w}.
  const Complex z(rng.uniform() * 2 - 1, rng.uniform() * 2 - 1), w(rng.uniform() * 2 - 1, rng.uniform() * 2 - 1);
  const AlgebraElement s1 = g.modular_sigma(z, g.modular_sigma(w, x)), s2 = g.modular_sigma(z + w, x);
  c.residual("sigma_z sigma_w = sigma_{z+w}", (s1 - s2).max_abs() / std::max(1.0, s2.max_abs()));
  c.residual("sigma_z(xy) = sigma_z(x) sigma_z(y)",
             (g.modular_sigma(z, x * y) - g.modular_sigma(z, x) * g.modular_sigma(z, y)).max_abs() /
                 std::max(1.0, g.modular_sigma(z, x * y).max_abs()));

  // m m* = 1 for the Markov trace; in general m m* is Tr(Q_a^{-1}) / n(a)
  // on block a.
  const GNSSpace gt(Functional::markov_trace(m));
  const Matrix mt = multiplication_map(gt);
  c.residual("m m* = 1 (Markov trace)", max_abs(mt * mt.adjoint() - identity(d)));
  const Matrix mg = multiplication_map(g);
  Matrix expected = Matrix::Zero(d, d);
  for (int a = 0; a < m.num_blocks(); ++a) {
    const Complex t = hermitian_power(phi.density(a), -1.0).trace() / static_cast<double>(m.block_size(a));
    for (int k = 0; k < m.block_size(a) * m.block_size(a); ++k) expected(m.coord_offset(a) + k, m.coord_offset(a) + k) = t;
  }
  c.residual("m m* = (+)_a Tr(Q_a^-1)/n(a)", rel_residual(mg * mg.adjoint(), expected));
}

// ---------------------------------------------------------------------------
// 2. Relation algebra.
inline void relations_trial(Rng& rng, int, const random::Limits& lim, Checks& c) {
  const RepresentedAlgebra r1 = random::representation(rng, random::algebra(rng, lim));
  const RepresentedAlgebra r2 = random::representation(rng, random::algebra(rng, lim));
  const RepresentedAlgebra r3 = random::representation(rng, random::algebra(rng, lim));
  const RepresentedAlgebra r4 = random::representation(rng, random::algebra(rng, lim));
  const QuantumRelation u = random::relation(rng, r1, r2);  // r1 -> r2
  const QuantumRelation v = random::relation(rng, r2, r3);
  const QuantumRelation w = random::relation(rng, r3, r4);
  c.space("(W V) U = W (V U)", compose_relations(compose_relations(w, v), u).space(),
          compose_relations(w, compose_relations(v, u)).space());
  c.space("V o M' = V", compose_relations(v, identity_relation(r2)).space(), v.space());
  c.space("N' o V = V", compose_relations(identity_relation(r3), v).space(), v.space());
  c.space("(V U)* = U* V*", adjoint_relation(compose_relations(v, u)).space(),
          compose_relations(adjoint_relation(u), adjoint_relation(v)).space());
  c.space("V** = V", adjoint_relation(adjoint_relation(v)).space(), v.space());
  c.space("V = sum of blocks 1_y V 1_x", sum_of_blocks(v, blocks(v)), v.space());

  // Classical relations on |X|, |Y|, |Z| <= 5.
  const int nx = rng.uniform_int(1, 5), ny = rng.uniform_int(1, 5), nz = rng.uniform_int(1, 5);
  const auto cx = classical_rep(nx), cy = classical_rep(ny), cz = classical_rep(nz);
  const auto r = random_pairs(rng, ny, nx), s = random_pairs(rng, nz, ny);
  const QuantumRelation qr = from_classical(cx, cy, r), qs = from_classical(cy, cz, s);
  auto sorted = [](std::vector<std::pair<int, int>> p) {
    std::sort(p.begin(), p.end());
    return p;
  };
  c.truth("classical round trip", to_classical(qr) == sorted(r));
  std::vector<std::pair<int, int>> sr;
  for (int z = 0; z < nz; ++z)
    for (int x = 0; x < nx; ++x) {
      bool hit = false;
      for (int y = 0; y < ny && !hit; ++y)
        hit = std::count(s.begin(), s.end(), std::make_pair(z, y)) && std::count(r.begin(), r.end(), std::make_pair(y, x));
      if (hit) sr.emplace_back(z, x);
    }
  c.truth("classical composition = boolean product", to_classical(compose_relations(qs, qr)) == sr);
}

// ---------------------------------------------------------------------------
// 3. Homomorphisms and coinjective relations.
inline void functions_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  const random::RandomHom h = random::hom(rng, lim, trial % 2 == 0);
  const RepresentedAlgebra mrep = random::representation(rng, h.target);
  const RepresentedAlgebra nrep = random::representation(rng, h.source);
  const QuantumRelation v = relation_of_hom(h.hom, mrep, nrep);
  const HomRecovery back = hom_of_relation(v);
  c.residual("hom -> relation -> hom", max_abs(back.hom.map().action() - h.hom.map().action()));
  c.space("relation_of_hom(recovered) = V", relation_of_hom(back.hom, mrep, nrep).space(), v.space());
  c.space("relation_of_cp(theta) = V^theta", relation_of_cp(h.hom.map(), mrep, nrep).space(), v.space());
  c.merge(property_dictionary(h.hom, v).claims);
  kernel_projection(h.hom, mrep, nrep);  // cross-checks itself
  const RelationFlags f = properties(v);
  if (f.injective && f.coinjective) {
    const Hom star = theta_star(h.hom, mrep, nrep);
    c.space("V^{theta*} = (V^theta)*", relation_of_hom(star, nrep, mrep).space(), adjoint_relation(v).space());
    const AlgebraElement z = central_support(v);
    const Matrix zmul = [&] {
      Matrix out(h.source.dim(), h.source.dim());
      for (int k = 0; k < h.source.dim(); ++k) out.col(k) = h.source.coords(z * h.source.basis(k));
      return out;
    }();
    c.residual("theta* o theta = z", max_abs(star.map().action() * h.hom.map().action() - zmul));
  }
}

// ---------------------------------------------------------------------------
// 4. Functoriality.
inline void functoriality_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  const bool unital = trial % 2 == 0;
  const random::RandomHom h1 = random::hom(rng, lim, unital);
  const random::RandomHom h2 = random::hom(rng, lim, unital, true, h1.target);
  const RepresentedAlgebra ra = random::representation(rng, h1.source);
  const RepresentedAlgebra rb = random::representation(rng, h1.target);
  const RepresentedAlgebra rc = random::representation(rng, h2.target);
  const Hom h21(compose_cp(h2.hom.map(), h1.hom.map()));
  c.space("homs: V^{t2 t1} = V^{t1} V^{t2}", relation_of_hom(h21, rc, ra).space(),
          compose_relations(relation_of_hom(h1.hom, rb, ra), relation_of_hom(h2.hom, rc, rb)).space());

  const MultiMatrixAlgebra a = random::algebra(rng, lim), b = random::algebra(rng, lim),
                           cc = random::algebra(rng, lim);
  const CPMap t1 = random::cp_map(rng, a, b, unital), t2 = random::cp_map(rng, b, cc, unital);
  const RepresentedAlgebra sa = random::representation(rng, a), sb = random::representation(rng, b),
                           sc = random::representation(rng, cc);
  c.space("cp: V^{t2 t1} = V^{t1} V^{t2}", relation_of_cp(compose_cp(t2, t1), sc, sa).space(),
          compose_relations(relation_of_cp(t1, sb, sa), relation_of_cp(t2, sc, sb)).space());

  // Kraus padding and unitary mixing leave V^theta unchanged.
  std::vector<Matrix> ks = kraus(t1, sb, sa);
  ks.push_back(Matrix::Zero(sa.hilbert_dim(), sb.hilbert_dim()));
  const Matrix u = random::unitary(rng, static_cast<int>(ks.size()));
  std::vector<Matrix> mixed;
  for (size_t i = 0; i < ks.size(); ++i) {
    Matrix s = Matrix::Zero(ks[0].rows(), ks[0].cols());
    for (size_t j = 0; j < ks.size(); ++j) s += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * ks[j];
    mixed.push_back(s);
  }
  c.residual("mixed Kraus family reproduces theta",
             max_abs(cp_from_kraus(sa, sb, mixed).action() - t1.action()));
  c.space("V^theta independent of the dilation", relation_of_kraus(sb, sa, mixed).space(),
          relation_of_cp(t1, sb, sa).space());
  if (unital) c.truth("theta UCP => V^theta cosurjective", properties(relation_of_cp(t1, sb, sa)).cosurjective);
}

// ---------------------------------------------------------------------------
// 5. Pullbacks.
inline void pullback_trial(Rng& rng, int, const random::Limits& lim, Checks& c) {
  random::Limits small = lim;
  small.max_block_size = std::min(small.max_block_size, 2);
  small.max_blocks = std::min(small.max_blocks, 2);
  const MultiMatrixAlgebra m1 = random::algebra(rng, small), n1 = random::algebra(rng, small),
                           m2 = random::algebra(rng, small), n2 = random::algebra(rng, small),
                           m3 = random::algebra(rng, small), n3 = random::algebra(rng, small);
  const RepresentedAlgebra r1 = random::representation(rng, m1, 1), s1 = random::representation(rng, n1, 1),
                           r2 = random::representation(rng, m2, 1), s2 = random::representation(rng, n2, 1),
                           r3 = random::representation(rng, m3, 1), s3 = random::representation(rng, n3, 1);
  const QuantumRelation v = random::relation(rng, r1, s1);
  const CPMap tm = random::cp_map(rng, m1, m2, false), tn = random::cp_map(rng, n1, n2, false);
  const QuantumRelation p = pullback(v, tm, r2, tn, s2);
  c.space("composition formula = dilation formula", p.space(), pullback_by_dilation(v, tm, r2, tn, s2).space());

  const CPMap tm2 = random::cp_map(rng, m2, m3, false), tn2 = random::cp_map(rng, n2, n3, false);
  c.space("pullback along composites = nested pullbacks",
          pullback(v, compose_cp(tm2, tm), r3, compose_cp(tn2, tn), s3).space(), pullback(p, tm2, r3, tn2, s3).space());

  // V^theta is the pullback of the trivial relation N' along (theta, id).
  const CPMap theta = random::cp_map(rng, n1, m2, false);
  c.space("V^theta = pullback of N'",
          pullback(identity_relation(s1), theta, r2, identity_map(n1), s1).space(),
          relation_of_cp(theta, r2, s1).space());
}

// ---------------------------------------------------------------------------
// 6. Psi' and the Schur product.
inline void schur_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  random::Limits small = lim;
  small.max_block_size = std::min(small.max_block_size, 2);
  const MultiMatrixAlgebra am = random::algebra(rng, small), an = random::algebra(rng, small);
  const GNSSpace m(maybe_tracial(rng, am, trial % 4 == 0)), n(maybe_tracial(rng, an, trial % 4 == 0));

  const AlgebraElement x1 = random::element(rng, an), x2 = random::element(rng, an);
  const AlgebraElement y1 = random::element(rng, am), y2 = random::element(rng, am);
  c.residual("rank-one law", rel_residual(schur_product(rank_one(m, n, x1, y1), rank_one(m, n, x2, y2)).matrix(),
                                          rank_one(m, n, x1 * x2, y1 * y2).matrix()));

  const GNSOperator a = random_gns_operator(rng, m, n), b = random_gns_operator(rng, m, n);
  c.residual("Psi'(A * B) = Psi'(A) Psi'(B)", rel_residual(psi_prime(schur_product(a, b)), psi_prime(a) * psi_prime(b)));
  c.residual("Psi'(A^dagger) = Psi'(A)^*", rel_residual(psi_prime(dagger(a)), psi_prime(a).adjoint()));
  c.residual("(A * B)^dagger = B^dagger * A^dagger",
             rel_residual(dagger(schur_product(a, b)).matrix(), schur_product(dagger(b), dagger(a)).matrix()));
  double r = 0.0;
  const GNSOperator back = psi_prime_inv(psi_prime(a), m, n, &r);
  c.residual("Psi'^{-1} Psi' = id", rel_residual(back.matrix(), a.matrix()));

  // Equivalences on Psi'^{-1} of a random projection, and on a positive
  // non-projection.
  const GNSOperator ap = psi_prime_inv(random_projection(rng, m, n), m, n);
  const Classification cp = classify(ap, 1e-8);
  c.truth("projection: CP, real, Schur-idempotent", cp.cp && cp.real && cp.schur_idempotent && cp.psi_projection);
  c.truth("projection: equivalences", cp.equivalences_hold);
  const GNSOperator aq = psi_prime_inv(random_positive(rng, m, n), m, n);
  const Classification cq = classify(aq, 1e-8);
  c.truth("positive: equivalences", cq.equivalences_hold && cq.cp);
  // Converse direction: adjacency operators of relations are CP and
  // Schur-idempotent, and Psi' sends them to projections.
  const GNSOperator ar = adjacency_of_relation(random::relation(rng, m.representation(), n.representation()), m, n);
  const Classification cr = classify(ar, 1e-8);
  c.truth("adjacency of relation: CP, idempotent => projection",
          cr.cp && cr.schur_idempotent && cr.psi_projection && cr.equivalences_hold);
  const GNSOperator two(m, m, 2.0 * identity(m.dim()));
  const Classification c2 = classify(two, 1e-8);
  c.truth("2 id: CP, real, not idempotent", c2.cp && c2.real && !c2.schur_idempotent && c2.equivalences_hold);

  // Psi'(id): projection onto M' for the Markov trace; in general its image
  // is nabla^{-1/4} M' nabla^{-1/4}.
  const GNSSpace mt(Functional::markov_trace(am));
  const Matrix pid = psi_prime(GNSOperator(mt, mt, identity(mt.dim())));
  c.residual("Psi'(id) = projection onto M' (Markov trace)", max_abs(pid - commutant_space(mt.representation()).projection()));
  const Matrix pg = psi_prime(GNSOperator(m, m, identity(m.dim())));
  c.space("Im Psi'(id) = nabla^{-1/4} M' nabla^{-1/4}", image_of_positive(pg, m.dim(), m.dim()),
          map_space(commutant_space(m.representation()), m.nabla_power(-0.25), m.nabla_power(-0.25)));

  // (xi1 | A(b1* b0) xi0) = (xi1 (x) conj(J c(b1)) | Psi'(A) (xi0 (x) conj(J c(b0)))).
  const AlgebraElement b0 = random::element(rng, am), b1 = random::element(rng, am);
  const Vector xi0 = random::ginibre(rng, n.dim(), 1).col(0), xi1 = random::ginibre(rng, n.dim(), 1).col(0);
  const Complex lhs = xi1.dot(n.left_action(a.apply(b1.adjoint() * b0)) * xi0);
  auto lift = [&](const Vector& xi, const AlgebraElement& bb) {
    const Vector jb = m.apply_j(m.coords(bb)).conjugate();
    return Vector(kron(xi, jb));
  };
  const Complex rhs = lift(xi1, b1).dot(psi_prime(a) * lift(xi0, b0));
  c.residual("(xi1 | A(b1* b0) xi0) via Psi'(A)", std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
}

// ---------------------------------------------------------------------------
// 7. Relations of positive elements and their links to theta.
inline void image_links_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  random::Limits small = lim;
  small.max_block_size = std::min(small.max_block_size, 2);
  const bool tracial = trial % 2 == 0;
  const MultiMatrixAlgebra am = random::algebra(rng, small), an = random::algebra(rng, small);
  const GNSSpace m(maybe_tracial(rng, am, tracial)), n(maybe_tracial(rng, an, tracial));
  const Matrix x = random_positive(rng, m, n);
  const OperatorSubspace s1 = relation_space_image(x, m, n), s2 = relation_space_bimodule(x, m, n),
                         s3 = relation_space_q(x, m, n);
  c.space("image form = N' nabla^{1/4} A nabla^{-1/4} M' form", s1, s2);
  c.space("image form = Q-power form", s1, s3);
  const QuantumRelation v = relation_of_positive(x, m, n);
  const GNSOperator a = psi_prime_inv(x, m, n);
  c.space("relation of kms_adjoint(A) = V*", relation_of_positive(psi_prime(kms_adjoint(a)), n, m).space(),
          adjoint_relation(v).space());
  const ThetaOfAdjacency t = theta_of_adjacency(a);
  c.residual("V^theta = nabla^{1/4} V nabla^{-1/4}", t.distance);
  if (tracial) c.space("tracial: V^theta = V", t.v_theta.space(), v.space());

  // Round trip V -> A -> V on a random bimodule.
  const QuantumRelation w = random::relation(rng, m.representation(), n.representation());
  const GNSOperator aw = adjacency_of_relation(w, m, n);
  c.space("V -> A -> V", relation_of_positive(psi_prime(aw), m, n).space(), w.space());
  c.residual("real A: J A* J = nabla^{-1/2} A* nabla^{1/2}",
             rel_residual(kms_adjoint(aw).matrix(), m.nabla_power(-0.5) * aw.matrix().adjoint() * n.nabla_power(0.5)));
  const Coinjectivity ci = coinjectivity_criterion(aw);
  c.truth("coinjectivity criterion agrees with V", ci.coinjective == properties(w).coinjective);
}

// ---------------------------------------------------------------------------
// 8. Adjacency operators of homomorphisms.
inline void adjacency_hom_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  const bool tracial_unital = trial % 3 == 0;
  random::Limits small = lim;
  small.max_gns_dim = std::min(small.max_gns_dim, 10);
  const random::RandomHom h = random::hom(rng, small, tracial_unital);
  const Functional pm = maybe_tracial(rng, h.target, tracial_unital), pn = maybe_tracial(rng, h.source, tracial_unital);
  const HomAdjacency ha = adjacency_of_hom(h.hom, pm, pn);
  c.merge(ha.claims);
  const Classification cl = classify(ha.a, 1e-8);
  c.residual("min Choi eigenvalue of A", std::max(0.0, -cl.min_eigenvalue), 1e-9);
  c.residual("|A * A - A|", max_abs(schur_product(ha.a, ha.a).matrix() - ha.a.matrix()));
  if (tracial_unital) {
    const GNSSpace gm(pm), gn(pn);
    const GNSOperator hat = operator_from_map(gn, gm, [&](const AlgebraElement& x) { return h.hom.apply(x); });
    c.residual("tracial unital: A = hat(theta)", max_abs(ha.a.matrix() - hat.matrix()));
    c.residual("tracial unital: u = 1", (ha.u - h.target.one()).max_abs());
  }
}

// ---------------------------------------------------------------------------
// 9. Realizing quantum graphs and relations by CP maps.
inline void construction_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  random::Limits small = lim;
  small.max_gns_dim = std::min(small.max_gns_dim, 10);
  const MultiMatrixAlgebra ma = random::algebra(rng, small);
  const RepresentedAlgebra rep = random::representation(rng, ma, 2);
  const QuantumRelation s = random::quantum_graph(rng, rep);
  c.merge(verdon_construct(s, 1e-9).claims, "verdon: ");

  if (trial < 20) {
    // Symmetric relation with a known x0: the confusability graph of a
    // non-unital CP map, x0 = theta(1).
    const MultiMatrixAlgebra na = random::algebra(rng, small);
    const CPMap theta = random::cp_map(rng, na, ma, false);
    const QuantumRelation g = confusability_graph(theta, rep, random::representation(rng, na, 1));
    c.merge(qg_from_cp_construct(g, theta.apply(na.one()), 1e-9).claims, "qg_from_cp: ");
  }

  // Every relation is V^theta for theta = kms_adjoint(adjacency_of_relation(V))
  // under the Markov traces.
  const MultiMatrixAlgebra mb = random::algebra(rng, small);
  const GNSSpace gm(Functional::markov_trace(ma)), gn(Functional::markov_trace(mb));
  const QuantumRelation v = random::relation(rng, gm.representation(), gn.representation());
  const CPMap theta = cp_map_of(kms_adjoint(adjacency_of_relation(v, gm, gn)));
  c.space("V = V^theta for theta from adjacency_of_relation(V)",
          relation_of_cp(theta, gm.representation(), gn.representation()).space(), v.space());
}

// ---------------------------------------------------------------------------
// 11. Flags under change of representation.
inline void transport_trial(Rng& rng, int trial, const random::Limits& lim, Checks& c) {
  QuantumRelation v;
  switch (trial % 3) {
    case 0: {
      const RepresentedAlgebra r1 = random::representation(rng, random::algebra(rng, lim));
      const RepresentedAlgebra r2 = random::representation(rng, random::algebra(rng, lim));
      v = random::relation(rng, r1, r2);
      break;
    }
    case 1: {
      const random::RandomHom h = random::hom(rng, lim, trial % 2 == 0);
      v = relation_of_hom(h.hom, random::representation(rng, h.target), random::representation(rng, h.source));
      break;
    }
    default: {
      const RepresentedAlgebra r = random::representation(rng, random::algebra(rng, lim));
      v = random::quantum_graph(rng, r);
      break;
    }
  }
  RepresentedAlgebra ns = random::representation(rng, v.source().algebra(), 3);
  RepresentedAlgebra nt = random::representation(rng, v.target().algebra(), 3);
  if (v.source().same_as(v.target())) nt = ns;
  const QuantumRelation w = transport(v, ns, nt);
  const RelationFlags fv = properties(v), fw = properties(w);
  c.truth("flags invariant under transport", flags_equal(fv, fw));
  c.truth("function classification invariant", fv.function == fw.function && fv.partial_function == fw.partial_function);
  c.space("transport back recovers V", transport(w, v.source(), v.target()).space(), v.space());
}

// ---------------------------------------------------------------------------
// 10. Fixed examples with exact values.
inline void fixtures_trial(Rng&, int, const random::Limits&, Checks& c) {
  const double r2 = std::sqrt(2.0);
  Matrix u1(2, 2), u2 = Matrix::Zero(2, 2);
  u1 << 3.0 / r2, 2.0 / r2, -3.0 / r2, 2.0 / r2;
  u2(0, 0) = std::sqrt(8.0);
  u2(1, 1) = std::sqrt(3.0);
  c.residual("u1* u1 - u2* u2 = 1", max_abs(u1.adjoint() * u1 - u2.adjoint() * u2 - identity(2)), 1e-12);
  const RepresentedAlgebra m2(MultiMatrixAlgebra({2}), {1});
  const QuantumRelation v = make_relation(m2, m2, {u1, u2}, false);
  c.equal_int("dim V", v.dim(), 2);
  c.truth("1 in V* V", contains(compose_relations(adjoint_relation(v), v).space(), identity(2)));
  c.truth("V cosurjective", properties(v).cosurjective);
  c.truth("V not realizable by a UCP map", !ucp_realizable_full_target(v).realizable);

  // e = |xi><xi| in M_2 (x) M_2^op = M_4.
  Vector xi(4);
  xi << 0.5, 0.5, 0.5, Complex(0.0, 0.5);
  const Matrix e = xi * xi.adjoint();
  Matrix u = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) u += e.block(2 * i, 2 * i, 2, 2);
  Matrix expected(2, 2);
  expected << 0.5, Complex(0.25, -0.25), Complex(0.25, 0.25), 0.5;
  c.residual("(Tr (x) id)(e)", max_abs(u - expected), 1e-12);
  c.residual("det u = 1/8", std::abs(u.determinant() - 0.125), 1e-12);
  // Place e in N (x) M^op on L^2(M_2) (x) conj L^2(M_2) (Markov trace) via
  // a (x) b -> L(a) (x) L(b^T)^T; a positive multiple c e would need
  // c (phi (x) id)(e) = 1, impossible as the slice is not scalar.
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2})));
  const int d = g.dim();
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  const auto& alg = g.algebra();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          x += e(2 * i + a, 2 * j + b) *
               kron(g.left_action(alg.matrix_unit(0, i, j)), g.left_action(alg.matrix_unit(0, b, a)).transpose());
  const Matrix slice = slice_state(x, g, g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(slice));
  c.residual("slice of e is not scalar", -(es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff()), -1e-6);
  bool any = false;
  for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0, 1.0 / es.eigenvalues().maxCoeff(), 1.0 / es.eigenvalues().minCoeff(),
                       2.0 / (es.eigenvalues().maxCoeff() + es.eigenvalues().minCoeff())})
    any = any || state_preservation_check(psi_prime_inv(scale * x, g, g)).preserves;
  c.truth("no positive multiple of e is state preserving", !any);
  const GNSOperator id(g, g, identity(d));
  c.truth("identity is state preserving", state_preservation_check(id).preserves);
  c.truth("2 id is not state preserving", !state_preservation_check(GNSOperator(g, g, 2.0 * identity(d))).preserves);

  // Channel p(1|1) = 1, p(.|2) uniform on {1, 2}.
  const CPMap ch = classical_channel({{1.0, 0.0}, {0.5, 0.5}});
  const RepresentedAlgebra cx = classical_rep(2), cy = classical_rep(2);
  c.truth("channel is unital CP", ch.is_cp() && ch.is_unital());
  const std::vector<std::pair<int, int>> want{{0, 0}, {0, 1}, {1, 1}};
  c.truth("R = {(y,x) : p(y|x) != 0}", to_classical(relation_of_cp(ch, cx, cy)) == want);
}

}  // namespace detail

inline const std::vector<SuiteInfo>& registry() {
  static const std::vector<SuiteInfo> r{
      {"gns", 1, 100, 1e-9, detail::gns_trial},
      {"relations", 2, 100, 1e-8, detail::relations_trial},
      {"functions", 3, 50, 1e-8, detail::functions_trial},
      {"functoriality", 4, 50, 1e-8, detail::functoriality_trial},
      {"pullback", 5, 30, 1e-8, detail::pullback_trial},
      {"schur", 6, 50, 1e-9, detail::schur_trial},
      {"image-links", 7, 50, 1e-8, detail::image_links_trial},
      {"adjacency-hom", 8, 30, 1e-8, detail::adjacency_hom_trial},
      {"construction", 9, 30, 1e-7, detail::construction_trial},
      {"fixtures", 10, 1, 1e-9, detail::fixtures_trial},
      {"transport", 11, 20, 1e-8, detail::transport_trial},
  };
  return r;
}

inline const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return &s;
  return nullptr;
}

inline TrialRecord run_trial(const SuiteInfo& suite, std::uint64_t seed, int trial, double tol,
                             const random::Limits& lim = {}) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
  Rng rng(rec.seed);
  Checks checks(tol);
  try {
    suite.run(rng, trial, lim, checks);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.claims = static_cast<int>(checks.claims().size());
  for (const auto& cl : checks.claims()) {
    if (std::isfinite(cl.residual)) rec.worst_residual = std::max(rec.worst_residual, cl.residual);
    if (!cl.holds) rec.failures.push_back(cl);
  }
  return rec;
}

// trials < 0 selects the suite default; tol <= 0 selects the suite default.
inline SuiteReport run_suite(const SuiteInfo& suite, std::uint64_t seed, int trials = -1, double tol = 0.0,
                             const random::Limits& lim = {}) {
  SuiteReport rep{suite.name, suite.criterion, seed, tol > 0.0 ? tol : suite.default_tol, {}};
  const int n = trials < 0 ? suite.default_trials : trials;
  for (int t = 0; t < n; ++t) rep.records.push_back(run_trial(suite, seed, t, rep.tol, lim));
  return rep;
}

}  // namespace qrelkit::suites
