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

// Quantum relations and their correspondence with *-homomorphisms.

#include <gtest/gtest.h>

#include "qrelkit/random.hpp"
#include "test_util.hpp"

namespace qrelkit {
namespace {

using test::full;
using test::unit;

Hom hom_of(const MultiMatrixAlgebra& n, const MultiMatrixAlgebra& m,
           const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  return Hom(cp_from_function(n, m, f));
}

void expect_all_flags(const RelationFlags& f) {
  EXPECT_TRUE(f.coinjective);
  EXPECT_TRUE(f.cosurjective);
  EXPECT_TRUE(f.injective);
  EXPECT_TRUE(f.surjective);
  EXPECT_TRUE(f.function);
  EXPECT_TRUE(f.partial_function);
  ASSERT_TRUE(f.symmetric.has_value());
  EXPECT_TRUE(*f.symmetric);
  ASSERT_TRUE(f.reflexive.has_value());
  EXPECT_TRUE(*f.reflexive);
}

TEST(MakeRelation, CommutantBasisGivesIdentity) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {2, 1});
  const QuantumRelation v = make_relation(r, r, r.commutant_basis(), false);
  EXPECT_TRUE(same_relation(v, identity_relation(r)));
}

TEST(MakeRelation, DiagonalAlgebraMatrixUnitIsBimodule) {
  const RepresentedAlgebra c2 = classical_rep(2);
  EXPECT_EQ(make_relation(c2, c2, {unit(2, 0, 1)}, false).dim(), 1);
}

TEST(MakeRelation, ScalarCommutantsAcceptAnySpan) {
  Rng rng(1);
  EXPECT_EQ(make_relation(full(2), full(2), {random::ginibre(rng, 2, 2)}, false).dim(), 1);
}

TEST(MakeRelation, ClosureOfAllOnesIsEverything) {
  const RepresentedAlgebra c2 = classical_rep(2);
  Matrix ones = Matrix::Ones(2, 2);
  EXPECT_EQ(make_relation(c2, c2, {ones}, true).dim(), 4);
  EXPECT_THROW(make_relation(c2, c2, {ones}, false), ValidationError);
}

TEST(Relation, IdentityHasAllFlags) {
  expect_all_flags(properties(identity_relation(RepresentedAlgebra(MultiMatrixAlgebra({2, 1}), {1, 3}))));
}

TEST(Relation, IdentityIsNeutralAndSelfAdjoint) {
  Rng rng(3);
  const RepresentedAlgebra a = random::representation(rng, random::algebra(rng, {}));
  const RepresentedAlgebra b = random::representation(rng, random::algebra(rng, {}));
  const QuantumRelation v = random::relation(rng, a, b);
  EXPECT_TRUE(same_relation(compose_relations(v, identity_relation(a)), v, 1e-8));
  EXPECT_TRUE(same_relation(adjoint_relation(identity_relation(a)), identity_relation(a)));
}

TEST(Relation, CounterexampleSpanIsCosurjective) {
  const QuantumRelation v = make_relation(full(2), full(2), {test::u1(), test::u2()}, false);
  EXPECT_EQ(v.dim(), 2);
  EXPECT_TRUE(contains(compose_relations(adjoint_relation(v), v).space(), identity(2)));
  EXPECT_TRUE(properties(v).cosurjective);
}

TEST(Relation, NonUnitalHomIsCoinjectiveNotCosurjective) {
  // theta : C -> C^2, a -> (a, 0).
  const MultiMatrixAlgebra n({1}), m({1, 1});
  const Hom h = hom_of(n, m, [&](const AlgebraElement& y) { return test::blocks({y.block(0), Matrix::Zero(1, 1)}); });
  const RelationFlags f = properties(relation_of_hom(h, classical_rep(2), full(1)));
  EXPECT_TRUE(f.coinjective);
  EXPECT_FALSE(f.cosurjective);
}

TEST(CentralSupport, IdentityAndZero) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {1, 2});
  EXPECT_LT((central_support(identity_relation(r)) - r.algebra().one()).max_abs(), 1e-12);
  const QuantumRelation zero(r, r, zero_space(r.hilbert_dim(), r.hilbert_dim()));
  EXPECT_LT(central_support(zero).max_abs(), 1e-12);
}

TEST(CentralSupport, KilledBlockIsComplement) {
  // theta : M_2 (+) C -> M_2 keeps the first block and kills the second.
  const MultiMatrixAlgebra n({2, 1}), m({2});
  const Hom h = hom_of(n, m, [](const AlgebraElement& y) { return test::blocks({y.block(0)}); });
  const AlgebraElement z = central_support(relation_of_hom(h, full(2), RepresentedAlgebra(n, {1, 1})));
  EXPECT_LT((z - n.block_unit(0)).max_abs(), 1e-10);
}

TEST(Blocks, SumOfComponentsIsRelation) {
  Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    const QuantumRelation v = random::relation(rng, random::representation(rng, random::algebra(rng, {})),
                                               random::representation(rng, random::algebra(rng, {})));
    EXPECT_TRUE(equal_spaces(sum_of_blocks(v, blocks(v)), v.space(), 1e-8));
  }
}

TEST(Classical, EmptyRelation) { EXPECT_EQ(from_classical(classical_rep(2), classical_rep(3), {}).dim(), 0); }

TEST(Classical, DiagonalIsIdentity) {
  const RepresentedAlgebra c3 = classical_rep(3);
  EXPECT_TRUE(same_relation(from_classical(c3, c3, {{0, 0}, {1, 1}, {2, 2}}), identity_relation(c3)));
}

TEST(Classical, CompositionIsBooleanProduct) {
  const RepresentedAlgebra c2 = classical_rep(2), c3 = classical_rep(3);
  // R : X -> Y and S : Y -> Z as (y, x) and (z, y) pairs.
  const QuantumRelation r = from_classical(c2, c3, {{0, 0}, {2, 1}});
  const QuantumRelation s = from_classical(c3, c2, {{1, 0}, {0, 2}, {1, 2}});
  const std::vector<std::pair<int, int>> expected{{0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(to_classical(compose_relations(s, r)), expected);
}

TEST(Classical, ExportRejectsNonCorners) {
  const RepresentedAlgebra c2 = classical_rep(2);
  const QuantumRelation v(c2, c2, span_of(2, 2, {Matrix::Ones(2, 2)}));
  EXPECT_THROW(to_classical(v), ConsistencyError);
}

TEST(Transport, TrivialChangeKeepsRelation) {
  Rng rng(4);
  const RepresentedAlgebra a = random::representation(rng, random::algebra(rng, {}));
  const QuantumRelation v = random::relation(rng, a, a);
  EXPECT_TRUE(same_relation(transport(v, a, a), v, 1e-8));
}

TEST(Transport, AmplificationScalesDimensionAndKeepsFlags) {
  // M_2 on C^2 has scalar commutant, so span{e12} is already a bimodule; on
  // C^2 (x) C^2 the commutant is 1 (x) M_2 and the relation becomes e12 (x) M_2.
  const QuantumRelation v = make_relation(full(2), full(2), {unit(2, 0, 1)}, true);
  ASSERT_EQ(v.dim(), 1);
  const QuantumRelation w = transport(v, full(2, 2), full(2, 2));
  EXPECT_EQ(w.dim(), 4);
  const RelationFlags fv = properties(v), fw = properties(w);
  EXPECT_EQ(fv.coinjective, fw.coinjective);
  EXPECT_EQ(fv.cosurjective, fw.cosurjective);
  EXPECT_EQ(fv.injective, fw.injective);
  EXPECT_EQ(fv.surjective, fw.surjective);
  EXPECT_EQ(fv.symmetric, fw.symmetric);
  EXPECT_EQ(fv.reflexive, fw.reflexive);
}

TEST(Transport, CommutesWithComposition) {
  Rng rng(6);
  const MultiMatrixAlgebra a = random::algebra(rng, {}), b = random::algebra(rng, {}), c = random::algebra(rng, {});
  const RepresentedAlgebra ra = random::representation(rng, a), rb = random::representation(rng, b),
                           rc = random::representation(rng, c);
  const RepresentedAlgebra sa = random::representation(rng, a), sb = random::representation(rng, b),
                           sc = random::representation(rng, c);
  const QuantumRelation w = random::relation(rng, ra, rb), v = random::relation(rng, rb, rc);
  EXPECT_TRUE(same_relation(transport(compose_relations(v, w), sa, sc),
                            compose_relations(transport(v, sb, sc), transport(w, sa, sb)), 1e-8));
}

TEST(InvertiblePair, Examples) {
  Rng rng(13);
  const RepresentedAlgebra r = full(2);
  EXPECT_TRUE(is_invertible_pair(identity_relation(r), identity_relation(r)));
  const Matrix u = random::unitary(rng, 2);
  const MultiMatrixAlgebra m({2});
  const Hom h = hom_of(m, m, [&](const AlgebraElement& y) { return test::blocks({u * y.block(0) * u.adjoint()}); });
  const QuantumRelation v = relation_of_hom(h, r, r);
  EXPECT_TRUE(is_invertible_pair(v, adjoint_relation(v)));
  EXPECT_FALSE(is_invertible_pair(QuantumRelation(r, r, zero_space(2, 2)), identity_relation(r)));
}

// ---------------------------------------------------------------------------
// *-homomorphisms.

TEST(HomRelation, IdentityGivesCommutant) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {2, 1});
  const Hom id(identity_map(r.algebra()));
  EXPECT_TRUE(same_relation(relation_of_hom(id, r, r), identity_relation(r)));
}

TEST(HomRelation, ZeroHomGivesZeroRelation) {
  const MultiMatrixAlgebra n({2}), m({1, 1});
  const Hom zero(CPMap(n, m, Matrix::Zero(m.dim(), n.dim())));
  EXPECT_EQ(relation_of_hom(zero, classical_rep(2), full(2)).dim(), 0);
}

TEST(HomRelation, DiagonalEmbeddingHasDiagonalIntertwiners) {
  // theta : C^2 -> M_2, (a, b) -> diag(a, b).
  const MultiMatrixAlgebra n({1, 1}), m({2});
  const Hom h = hom_of(n, m, [](const AlgebraElement& y) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = y.block(0)(0, 0);
    d(1, 1) = y.block(1)(0, 0);
    return test::blocks({d});
  });
  const QuantumRelation v = relation_of_hom(h, full(2), classical_rep(2));
  EXPECT_EQ(v.dim(), 2);
  EXPECT_TRUE(equal_spaces(v.space(), span_of(2, 2, {unit(2, 0, 0), unit(2, 1, 1)})));
}

TEST(HomOfRelation, IdentityAndZero) {
  const RepresentedAlgebra r(MultiMatrixAlgebra({2, 1}), {1, 2});
  const HomRecovery id = hom_of_relation(identity_relation(r));
  EXPECT_LT(max_abs(id.hom.map().action() - identity(r.algebra().dim())), 1e-10);
  const HomRecovery zero = hom_of_relation(QuantumRelation(r, r, zero_space(r.hilbert_dim(), r.hilbert_dim())));
  EXPECT_LT(max_abs(zero.hom.map().action()), 1e-12);
}

TEST(HomOfRelation, RoundTripOnRandomHoms) {
  Rng rng(17);
  for (int t = 0; t < 8; ++t) {
    const random::RandomHom h = random::hom(rng, {}, t % 2 == 0);
    const QuantumRelation v =
        relation_of_hom(h.hom, random::representation(rng, h.target), random::representation(rng, h.source));
    EXPECT_LT(max_abs(hom_of_relation(v).hom.map().action() - h.hom.map().action()), 1e-8) << "trial " << t;
  }
}

TEST(PropertyDictionary, Isomorphism) {
  Rng rng(19);
  const Matrix u = random::unitary(rng, 2);
  const MultiMatrixAlgebra m({2});
  const Hom h = hom_of(m, m, [&](const AlgebraElement& y) { return test::blocks({u * y.block(0) * u.adjoint()}); });
  // V = span{u}: a bijective function, but neither symmetric nor reflexive
  // unless u is a multiple of 1 (resp. of u*).
  const QuantumRelation v = relation_of_hom(h, full(2), full(2));
  EXPECT_EQ(v.dim(), 1);
  const RelationFlags f = properties(v);
  EXPECT_TRUE(f.coinjective && f.cosurjective && f.injective && f.surjective && f.function && f.partial_function);
  ASSERT_TRUE(f.symmetric.has_value() && f.reflexive.has_value());
  EXPECT_FALSE(*f.symmetric);
  EXPECT_FALSE(*f.reflexive);
  EXPECT_TRUE(property_dictionary(h, v).ok());
}

TEST(PropertyDictionary, SurjectiveNonInjectiveHom) {
  // theta : C^2 -> C, (a, b) -> a.
  const MultiMatrixAlgebra n({1, 1}), m({1});
  const Hom h = hom_of(n, m, [](const AlgebraElement& y) { return test::blocks({y.block(0)}); });
  const QuantumRelation v = relation_of_hom(h, full(1), classical_rep(2));
  const RelationFlags f = properties(v);
  EXPECT_TRUE(f.injective);
  EXPECT_FALSE(f.surjective);
  EXPECT_TRUE(property_dictionary(h, v).ok());
}

TEST(PropertyDictionary, InjectiveNonSurjectiveHom) {
  // theta : C -> C^2, a -> (a, a).
  const MultiMatrixAlgebra n({1}), m({1, 1});
  const Hom h = hom_of(n, m, [](const AlgebraElement& y) { return test::blocks({y.block(0), y.block(0)}); });
  const QuantumRelation v = relation_of_hom(h, classical_rep(2), full(1));
  const RelationFlags f = properties(v);
  EXPECT_TRUE(f.surjective);
  EXPECT_FALSE(f.injective);
  EXPECT_TRUE(property_dictionary(h, v).ok());
}

TEST(KernelProjection, Examples) {
  const MultiMatrixAlgebra n({2, 3}), m({2});
  const RepresentedAlgebra nr(n, {1, 1});
  const Hom proj = hom_of(n, m, [](const AlgebraElement& y) { return test::blocks({y.block(0)}); });
  EXPECT_LT((kernel_projection(proj, full(2), nr) - n.block_unit(0)).max_abs(), 1e-10);
  const Hom id(identity_map(n));
  EXPECT_LT((kernel_projection(id, nr, nr) - n.one()).max_abs(), 1e-10);
  const Hom zero(CPMap(n, m, Matrix::Zero(m.dim(), n.dim())));
  EXPECT_LT(kernel_projection(zero, full(2), nr).max_abs(), 1e-10);
}

TEST(ThetaStar, IdentityAndIsomorphism) {
  Rng rng(23);
  const MultiMatrixAlgebra m({2});
  const Hom id(identity_map(m));
  EXPECT_LT(max_abs(theta_star(id, full(2), full(2)).map().action() - identity(4)), 1e-10);
  const Matrix u = random::unitary(rng, 2);
  const Hom h = hom_of(m, m, [&](const AlgebraElement& y) { return test::blocks({u * y.block(0) * u.adjoint()}); });
  const Hom s = theta_star(h, full(2), full(2));
  EXPECT_LT(max_abs(s.map().action() * h.map().action() - identity(4)), 1e-10);
}

TEST(ThetaStar, CentralCornerInverseIsMultiplicationByZ) {
  // theta : M_2 (+) M_3 -> M_2 (+) C, (x, y) -> (x, 0).
  const MultiMatrixAlgebra n({2, 3}), m({2, 1});
  const RepresentedAlgebra nr(n, {1, 1}), mr(m, {1, 1});
  const Hom h = hom_of(n, m, [](const AlgebraElement& y) { return test::blocks({y.block(0), Matrix::Zero(1, 1)}); });
  const Hom s = theta_star(h, mr, nr);
  Rng rng(29);
  const AlgebraElement y = random::element(rng, n);
  EXPECT_LT((s.apply(h.apply(y)) - n.block_unit(0) * y).max_abs(), 1e-10);
}

}  // namespace
}  // namespace qrelkit
