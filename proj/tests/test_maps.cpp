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

// CP maps, dilations, pullbacks, adjacency operators and the constructions
// of CP maps from quantum graphs.

#include <gtest/gtest.h>

#include "qrelkit/random.hpp"
#include "test_util.hpp"

namespace qrelkit {
namespace {

using test::full;
using test::unit;

CPMap channel_example() { return classical_channel({{1.0, 0.0}, {0.5, 0.5}}); }

CPMap trace_map(int n) {
  const MultiMatrixAlgebra m({n});
  return cp_from_function(m, m, [&](const AlgebraElement& x) {
    return test::blocks({x.block(0).trace() / static_cast<double>(n) * identity(n)});
  });
}

TEST(CPMap, IdentityIsUnitalHom) {
  const CPMap id = identity_map(MultiMatrixAlgebra({2}));
  EXPECT_TRUE(id.is_cp());
  EXPECT_TRUE(id.is_unital());
  EXPECT_TRUE(id.is_hom());
}

TEST(CPMap, NormalizedTraceIsUcpNotHom) {
  const CPMap t = trace_map(3);
  EXPECT_TRUE(t.is_cp());
  EXPECT_TRUE(t.is_unital());
  EXPECT_FALSE(t.is_hom());
  // Choi matrix of x -> Tr(x)/3 * 1 is 1/3 times the identity.
  EXPECT_NEAR(t.min_choi_eigenvalue(), 1.0 / 3.0, 1e-12);
}

TEST(CPMap, TransposeIsNotCP) {
  const MultiMatrixAlgebra m({2});
  const CPMap t = cp_from_function(m, m, [](const AlgebraElement& x) { return x.transpose(); });
  EXPECT_FALSE(t.is_cp());
  EXPECT_NEAR(t.min_choi_eigenvalue(), -1.0, 1e-12);
  EXPECT_THROW(make_cp(m, m, t.action()), ValidationError);
}

TEST(CPMap, ClassicalChannelIsUnitalCP) {
  const CPMap ch = channel_example();
  EXPECT_TRUE(ch.is_cp());
  EXPECT_TRUE(ch.is_unital());
  EXPECT_FALSE(ch.is_hom());
}

TEST(Kraus, IdentityHasOneScalarKraus) {
  const RepresentedAlgebra r = full(3);
  const auto ks = kraus(identity_map(r.algebra()), r, r);
  ASSERT_EQ(ks.size(), 1u);
  EXPECT_LT(max_abs(ks[0].adjoint() * ks[0] - identity(3)), 1e-12);
  EXPECT_LT(max_abs(ks[0] - ks[0](0, 0) * identity(3)), 1e-12);
}

TEST(Kraus, UnitaryConjugationHasOneKraus) {
  Rng rng(2);
  const Matrix u = random::unitary(rng, 2);
  const MultiMatrixAlgebra m({2});
  const CPMap t = cp_from_function(m, m, [&](const AlgebraElement& x) { return test::blocks({u * x.block(0) * u.adjoint()}); });
  EXPECT_EQ(kraus(t, full(2), full(2)).size(), 1u);
}

TEST(Kraus, ChannelDilationReproducesChannel) {
  // v delta_x = sum_y p(y|x)^{1/2} delta_y (x) delta_x; theta(f) = v* (f (x) 1) v.
  const std::vector<std::vector<double>> p{{1.0, 0.0}, {0.5, 0.5}};
  const CPMap ch = classical_channel(p);
  Matrix v = Matrix::Zero(4, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) v(y * 2 + x, x) = std::sqrt(p[x][y]);
  for (int y = 0; y < 2; ++y) {
    const Matrix f = kron(unit(2, y, y), identity(2));
    const Matrix expected = classical_rep(2).embed(ch.apply(classical_rep(2).algebra().basis(y)));
    EXPECT_LT(max_abs(v.adjoint() * f * v - expected), 1e-14);
  }
  const Stinespring s = stinespring(ch, classical_rep(2), classical_rep(2));
  for (int y = 0; y < 2; ++y) {
    const Matrix f = kron(unit(2, y, y), identity(s.aux_dim));
    const Matrix expected = classical_rep(2).embed(ch.apply(classical_rep(2).algebra().basis(y)));
    EXPECT_LT(max_abs(s.v.adjoint() * f * s.v - expected), 1e-12);
  }
}

TEST(RelationOfCP, Examples) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {1, 2});
  EXPECT_TRUE(same_relation(relation_of_cp(identity_map(r.algebra()), r, r), identity_relation(r)));
  const QuantumRelation v = relation_of_cp(channel_example(), classical_rep(2), classical_rep(2));
  EXPECT_TRUE(equal_spaces(v.space(), span_of(2, 2, {unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 1)})));
  const std::vector<std::pair<int, int>> expected{{0, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(to_classical(v), expected);
}

TEST(RelationOfCP, AgreesWithHomConstruction) {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const random::RandomHom h = random::hom(rng, {}, t % 2 == 0);
    const RepresentedAlgebra mr = random::representation(rng, h.target), nr = random::representation(rng, h.source);
    EXPECT_TRUE(same_relation(relation_of_cp(h.hom.map(), mr, nr), relation_of_hom(h.hom, mr, nr), 1e-8));
  }
}

TEST(ComposeCP, IdentityAndChannels) {
  const CPMap ch = channel_example();
  EXPECT_LT(max_abs(compose_cp(ch, identity_map(ch.source())).action() - ch.action()), 1e-15);
  // theta2 o theta1 has stochastic matrix P1 P2 in the p[x][y] layout.
  const CPMap ch2 = classical_channel({{0.0, 1.0}, {1.0, 0.0}});
  const CPMap c = compose_cp(ch, ch2);
  Matrix expected(2, 2);
  expected << 0.0, 1.0, 0.5, 0.5;
  EXPECT_LT(max_abs(c.action() - expected), 1e-15);
  const RepresentedAlgebra c2 = classical_rep(2);
  const std::vector<std::pair<int, int>> support{{0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(to_classical(relation_of_cp(c, c2, c2)), support);
  EXPECT_TRUE(same_relation(relation_of_cp(c, c2, c2),
                            compose_relations(relation_of_cp(ch2, c2, c2), relation_of_cp(ch, c2, c2))));
}

TEST(Confusability, Examples) {
  const RepresentedAlgebra r = full(2);
  EXPECT_TRUE(same_relation(confusability_graph(identity_map(r.algebra()), r, r), identity_relation(r)));
  // Inputs 1 and 2 share output 1, so every pair is confusable.
  const QuantumRelation g = confusability_graph(channel_example(), classical_rep(2), classical_rep(2));
  EXPECT_EQ(g.dim(), 4);
  const QuantumRelation h = confusability_graph(classical_channel({{1.0, 0.0}, {0.0, 1.0}}), classical_rep(2),
                                                classical_rep(2));
  EXPECT_TRUE(same_relation(h, identity_relation(classical_rep(2))));
  EXPECT_EQ(confusability_graph(trace_map(2), r, r).dim(), 4);
}

TEST(Pullback, IdentitiesKeepRelation) {
  Rng rng(7);
  const RepresentedAlgebra a = random::representation(rng, random::algebra(rng, {}), 1);
  const RepresentedAlgebra b = random::representation(rng, random::algebra(rng, {}), 1);
  const QuantumRelation v = random::relation(rng, a, b);
  EXPECT_TRUE(same_relation(pullback(v, identity_map(a.algebra()), a, identity_map(b.algebra()), b), v, 1e-8));
}

TEST(UcpRealizable, Examples) {
  const QuantumRelation one = make_relation(full(2), full(2), {identity(2)}, false);
  const UcpRealizability r1 = ucp_realizable_full_target(one);
  EXPECT_TRUE(r1.realizable);
  EXPECT_EQ(r1.gram.rows(), 1);

  const QuantumRelation fixture = make_relation(full(2), full(2), {test::u1(), test::u2()}, false);
  EXPECT_LT(max_abs(test::u1().adjoint() * test::u1() - test::u2().adjoint() * test::u2() - identity(2)), 1e-14);
  EXPECT_FALSE(ucp_realizable_full_target(fixture).realizable);

  Rng rng(31);
  const Matrix iso = random::unitary(rng, 4).leftCols(2);
  const QuantumRelation pair = make_relation(full(2), full(2), {iso.topRows(2), iso.bottomRows(2)}, false);
  EXPECT_TRUE(ucp_realizable_full_target(pair).realizable);
}

// ---------------------------------------------------------------------------
// GNS operators, the Schur product and Psi'.

GNSOperator rank_one(const GNSSpace& m, const GNSSpace& n, const AlgebraElement& x, const AlgebraElement& y) {
  return GNSOperator(m, n, n.coords(x) * m.coords(y).adjoint());
}

TEST(Schur, RankOneLaw) {
  Rng rng(3);
  const GNSSpace m(random::functional(rng, MultiMatrixAlgebra({2, 1})));
  const GNSSpace n(random::functional(rng, MultiMatrixAlgebra({2})));
  const AlgebraElement x1 = random::element(rng, n.algebra()), x2 = random::element(rng, n.algebra());
  const AlgebraElement y1 = random::element(rng, m.algebra()), y2 = random::element(rng, m.algebra());
  EXPECT_LT(rel_residual(schur_product(rank_one(m, n, x1, y1), rank_one(m, n, x2, y2)).matrix(),
                         rank_one(m, n, x1 * x2, y1 * y2).matrix()),
            1e-12);
}

TEST(Schur, CommutativeCaseIsEntrywise) {
  Rng rng(4);
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({1, 1, 1})));
  const Matrix a = random::ginibre(rng, 3, 3), b = random::ginibre(rng, 3, 3);
  EXPECT_LT(max_abs(schur_product(GNSOperator(g, g, a), GNSOperator(g, g, b)).matrix() - a.cwiseProduct(b)), 1e-13);
}

TEST(Dagger, IdentityAndRankOne) {
  Rng rng(6);
  const GNSSpace g(random::functional(rng, MultiMatrixAlgebra({2})));
  const GNSOperator id(g, g, identity(g.dim()));
  EXPECT_LT(max_abs(dagger(id).matrix() - identity(g.dim())), 1e-13);
  const AlgebraElement x = random::element(rng, g.algebra()), y = random::element(rng, g.algebra());
  const GNSOperator lhs = dagger(rank_one(g, g, x, y));
  const GNSOperator rhs = rank_one(g, g, x.adjoint(), g.modular_sigma(Complex(0.0, 1.0), y).adjoint());
  EXPECT_LT(rel_residual(lhs.matrix(), rhs.matrix()), 1e-12);
}

TEST(PsiPrime, StarCompatibleAndInvertible) {
  Rng rng(8);
  const GNSSpace m(random::functional(rng, MultiMatrixAlgebra({2, 1})));
  const GNSSpace n(random::functional(rng, MultiMatrixAlgebra({1, 2})));
  const GNSOperator a(m, n, random::ginibre(rng, n.dim(), m.dim()));
  EXPECT_LT(rel_residual(psi_prime(dagger(a)), psi_prime(a).adjoint()), 1e-12);
  const Matrix x = psi_prime(GNSOperator(m, n, random::ginibre(rng, n.dim(), m.dim())));
  double r = 1.0;
  EXPECT_LT(rel_residual(psi_prime(psi_prime_inv(x, m, n, &r)), x), 1e-12);
  EXPECT_LT(r, 1e-12);
}

TEST(PsiPrime, IdentityGoesToCommutantProjection) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2, 1})));
  const Matrix p = psi_prime(GNSOperator(g, g, identity(g.dim())));
  EXPECT_LT(max_abs(p - commutant_space(g.representation()).projection()), 1e-13);
}

TEST(PsiPrime, CommutativePointProjections) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({1, 1})));
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const Matrix p = psi_prime(GNSOperator(g, g, unit(2, y, x)));
      EXPECT_LT(max_abs(p - unit(4, 2 * y + x, 2 * y + x)), 1e-14);
    }
}

TEST(Classify, Examples) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2})));
  const Classification id = classify(GNSOperator(g, g, identity(4)));
  EXPECT_TRUE(id.cp && id.real && id.schur_idempotent && id.psi_projection && id.equivalences_hold);
  const Classification two = classify(GNSOperator(g, g, 2.0 * identity(4)));
  EXPECT_TRUE(two.cp);
  EXPECT_TRUE(two.real);
  EXPECT_FALSE(two.schur_idempotent);
  EXPECT_TRUE(two.equivalences_hold);
  // 0/1 adjacency matrix of a classical relation.
  const GNSSpace c(Functional::markov_trace(MultiMatrixAlgebra({1, 1, 1})));
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = a(0, 2) = a(1, 1) = a(2, 0) = 1.0;
  const Classification cl = classify(GNSOperator(c, c, a));
  EXPECT_TRUE(cl.cp && cl.real && cl.schur_idempotent && cl.psi_projection);
}

TEST(RelationOfPositive, CommutantProjection) {
  // Non-tracial: the identity relation comes from Psi'(1), which is not the
  // commutant projection.
  const GNSSpace g(Functional(MultiMatrixAlgebra({2}), {test::diag({1.0, 3.0})}));
  const Matrix e0 = commutant_space(g.representation()).projection();
  const Matrix p1 = psi_prime(GNSOperator(g, g, identity(g.dim())));
  EXPECT_TRUE(same_relation(relation_of_positive(p1, g, g), identity_relation(g.representation())));
  EXPECT_GT(max_abs(p1 - e0), 1e-3);
  const GNSSpace t(Functional::markov_trace(MultiMatrixAlgebra({2})));
  EXPECT_LT(max_abs(psi_prime_inv(commutant_space(t.representation()).projection(), t, t).matrix() - identity(4)),
            1e-13);
}

TEST(AdjacencyOfRelation, TracialCommutativeIsZeroOneMatrix) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({1, 1, 1})));
  const QuantumRelation v = from_classical(g.representation(), g.representation(), {{0, 1}, {2, 2}, {1, 0}});
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 1) = expected(2, 2) = expected(1, 0) = 1.0;
  EXPECT_LT(max_abs(adjacency_of_relation(v, g, g).matrix() - expected), 1e-13);
}

TEST(AdjacencyOfRelation, RoundTripNonTracial) {
  Rng rng(12);
  const GNSSpace m(random::functional(rng, MultiMatrixAlgebra({2, 1})));
  const GNSSpace n(random::functional(rng, MultiMatrixAlgebra({2, 1})));
  const QuantumRelation v = random::relation(rng, m.representation(), n.representation());
  const GNSOperator a = adjacency_of_relation(v, m, n);
  EXPECT_TRUE(same_relation(relation_of_positive(psi_prime(a), m, n), v, 1e-8));
}

TEST(KmsAdjoint, TracialRealIsHilbertAdjoint) {
  Rng rng(14);
  const GNSSpace m(Functional::markov_trace(MultiMatrixAlgebra({2, 1})));
  const GNSSpace n(Functional::markov_trace(MultiMatrixAlgebra({1, 2})));
  const GNSOperator a = adjacency_of_relation(random::relation(rng, m.representation(), n.representation()), m, n);
  EXPECT_LT(max_abs(kms_adjoint(a).matrix() - a.matrix().adjoint()), 1e-12);
  const GNSOperator id(m, m, identity(m.dim()));
  EXPECT_LT(max_abs(kms_adjoint(id).matrix() - identity(m.dim())), 1e-14);
}

TEST(KmsAdjoint, RelationIsAdjointRelation) {
  Rng rng(15);
  const GNSSpace m(random::functional(rng, MultiMatrixAlgebra({2})));
  const GNSSpace n(random::functional(rng, MultiMatrixAlgebra({1, 1})));
  const Matrix y = psi_prime(GNSOperator(m, n, random::ginibre(rng, n.dim(), m.dim())));
  const GNSOperator a = psi_prime_inv(y.adjoint() * y, m, n);
  EXPECT_TRUE(same_relation(relation_of_positive(psi_prime(kms_adjoint(a)), n, m),
                            adjoint_relation(relation_of_positive(psi_prime(a), m, n)), 1e-8));
}

TEST(ThetaOfAdjacency, TracialIdentity) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2})));
  const ThetaOfAdjacency t = theta_of_adjacency(GNSOperator(g, g, identity(4)));
  EXPECT_LT(max_abs(t.theta.action() - identity(4)), 1e-12);
  EXPECT_TRUE(same_relation(t.v_theta, identity_relation(g.representation())));
}

TEST(ThetaOfAdjacency, NonTracialDiffersByNablaConjugation) {
  Rng rng(16);
  const GNSSpace g(Functional(MultiMatrixAlgebra({2}), {test::diag({1.0, 2.0})}));
  const QuantumRelation v = make_relation(g.representation(), g.representation(),
                                          {g.left_action(random::element(rng, g.algebra())).transpose()}, true);
  const ThetaOfAdjacency t = theta_of_adjacency(adjacency_of_relation(v, g, g));
  EXPECT_LT(t.distance, 1e-9);
  EXPECT_TRUE(equal_spaces(t.twisted.space(), map_space(v.space(), g.nabla_power(0.25), g.nabla_power(-0.25)), 1e-9));
}

TEST(Coinjectivity, Examples) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2})));
  const Coinjectivity id = coinjectivity_criterion(GNSOperator(g, g, identity(4)));
  EXPECT_TRUE(id.coinjective);
  ASSERT_TRUE(id.x0.has_value());
  EXPECT_LT((*id.x0 - g.algebra().one()).max_abs(), 1e-12);
  const QuantumRelation everything(g.representation(), g.representation(), full_space(4, 4));
  EXPECT_FALSE(coinjectivity_criterion(adjacency_of_relation(everything, g, g)).coinjective);
  Rng rng(18);
  const Matrix u = random::unitary(rng, 2);
  const Hom h(cp_from_function(g.algebra(), g.algebra(),
                               [&](const AlgebraElement& x) { return test::blocks({u * x.block(0) * u.adjoint()}); }));
  const HomAdjacency ha = adjacency_of_hom(h, g.functional(), g.functional());
  EXPECT_TRUE(coinjectivity_criterion(ha.a).coinjective);
}

TEST(AdjacencyOfHom, IdentityUnderMarkovTraceIsIdentity) {
  const Functional phi = Functional::markov_trace(MultiMatrixAlgebra({2, 1}));
  const HomAdjacency ha = adjacency_of_hom(Hom(identity_map(phi.algebra())), phi, phi);
  EXPECT_TRUE(ha.ok());
  EXPECT_LT(max_abs(ha.a.matrix() - identity(phi.algebra().dim())), 1e-12);
  EXPECT_LT((ha.u - phi.algebra().one()).max_abs(), 1e-12);
}

// For a general state the identity hom gives u_a = n_a / Tr(Q_a^{-1}) on each
// block and A = u. The identity operator itself is not Schur-idempotent then.
TEST(AdjacencyOfHom, IdentityUnderGeneralStateIsBlockScalar) {
  Rng rng(20);
  const Functional phi = random::functional(rng, MultiMatrixAlgebra({2, 1}));
  const MultiMatrixAlgebra& m = phi.algebra();
  const HomAdjacency ha = adjacency_of_hom(Hom(identity_map(m)), phi, phi);
  EXPECT_TRUE(ha.ok());
  std::vector<Matrix> ub;
  for (int a = 0; a < m.num_blocks(); ++a) {
    const double c = m.block_size(a) / hermitian_power(phi.density(a), -1.0).trace().real();
    ub.push_back(c * identity(m.block_size(a)));
  }
  const AlgebraElement u(ub);
  EXPECT_LT((ha.u - u).max_abs(), 1e-10);
  const GNSSpace g(phi);
  const GNSOperator expected = operator_from_map(g, g, [&](const AlgebraElement& x) { return u * x; });
  EXPECT_LT(max_abs(ha.a.matrix() - expected.matrix()), 1e-10);
  const GNSOperator id(g, g, identity(g.dim()));
  EXPECT_GT(max_abs(schur_product(id, id).matrix() - id.matrix()), 1e-3);
}

TEST(AdjacencyOfHom, DiagonalEmbeddingNonTracial) {
  const MultiMatrixAlgebra n({1, 1}), m({2});
  const Hom h(cp_from_function(n, m, [](const AlgebraElement& y) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = y.block(0)(0, 0);
    d(1, 1) = y.block(1)(0, 0);
    return test::blocks({d});
  }));
  const Functional pm(m, {test::diag({1.0, 2.0}) / 3.0});
  const Functional pn(n, {test::diag({0.25}), test::diag({0.75})});
  const HomAdjacency ha = adjacency_of_hom(h, pm, pn);
  EXPECT_TRUE(ha.ok());
  EXPECT_LT(max_abs(schur_product(ha.a, ha.a).matrix() - ha.a.matrix()), 1e-8);
}

TEST(AdjacencyOfHom, TracialUnitalIsGnsMatrixOfTheta) {
  Rng rng(21);
  const random::RandomHom h = random::hom(rng, {}, true);
  const Functional pm = Functional::markov_trace(h.target), pn = Functional::markov_trace(h.source);
  const HomAdjacency ha = adjacency_of_hom(h.hom, pm, pn);
  const GNSOperator hat =
      operator_from_map(GNSSpace(pn), GNSSpace(pm), [&](const AlgebraElement& x) { return h.hom.apply(x); });
  EXPECT_LT(max_abs(ha.a.matrix() - hat.matrix()), 1e-10);
  EXPECT_LT((ha.u - h.target.one()).max_abs(), 1e-10);
}

TEST(StatePreservation, Examples) {
  const GNSSpace g(Functional(MultiMatrixAlgebra({2}), {test::diag({1.0, 2.0})}));
  EXPECT_TRUE(state_preservation_check(GNSOperator(g, g, identity(4))).preserves);
  EXPECT_FALSE(state_preservation_check(GNSOperator(g, g, 2.0 * identity(4))).preserves);
}

TEST(StatePreservation, InvertibleSliceIsNotEnough) {
  Vector xi(4);
  xi << 0.5, 0.5, 0.5, Complex(0.0, 0.5);
  const Matrix e = xi * xi.adjoint();
  Matrix u = e.block(0, 0, 2, 2) + e.block(2, 2, 2, 2);
  Matrix expected(2, 2);
  expected << 0.5, Complex(0.25, -0.25), Complex(0.25, 0.25), 0.5;
  EXPECT_LT(max_abs(u - expected), 1e-15);
  EXPECT_NEAR(std::abs(u.determinant() - 0.125), 0.0, 1e-12);
}

// ---------------------------------------------------------------------------
// Constructions.

TEST(Verdon, TrivialGraph) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {1, 1});
  const Construction c = verdon_construct(identity_relation(r));
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.theta.is_unital());
  EXPECT_TRUE(same_relation(confusability_graph(c.theta, r, full_matrix_rep(c.kraus_count)), identity_relation(r), 1e-8));
}

TEST(Verdon, FullGraphOnM2) {
  const QuantumRelation s(full(2), full(2), full_space(2, 2));
  const Construction c = verdon_construct(s);
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.theta.is_cp());
  EXPECT_TRUE(c.theta.is_unital());
}

TEST(Verdon, RejectsNonReflexive) {
  const RepresentedAlgebra c2 = classical_rep(2);
  EXPECT_THROW(verdon_construct(from_classical(c2, c2, {{0, 1}, {1, 0}})), InputError);
}

TEST(QGFromCP, CornerGraph) {
  const RepresentedAlgebra c2 = classical_rep(2);
  const QuantumRelation s = from_classical(c2, c2, {{0, 0}});
  const AlgebraElement x0 = c2.algebra().block_unit(0);
  const Construction c = qg_from_cp_construct(s, x0);
  EXPECT_TRUE(c.ok());
  EXPECT_LT((c.theta.apply(c.theta.source().one()) - x0).max_abs(), 1e-9);
}

TEST(FindX0, Examples) {
  const RepresentedAlgebra c2 = classical_rep(2);
  EXPECT_FALSE(find_x0(from_classical(c2, c2, {{0, 1}, {1, 0}})).has_value());

  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {1, 1});
  const auto x = find_x0(identity_relation(r));
  ASSERT_TRUE(x.has_value());
  for (int a = 0; a < 2; ++a) EXPECT_GT(min_eigenvalue(hermitian_part(x->block(a))), 1e-6);

  const Matrix p = test::diag({1.0, 1.0, 0.0});
  const QuantumRelation s = make_relation(full(3), full(3), {p}, false);
  const auto y = find_x0(s);
  ASSERT_TRUE(y.has_value());
  const Complex c = y->block(0)(0, 0);
  EXPECT_GT(c.real(), 0.0);
  EXPECT_LT(max_abs(y->block(0) - c * p), 1e-8);
}

}  // namespace
}  // namespace qrelkit
