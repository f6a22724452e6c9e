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

// Multimatrix algebras, representations, states, GNS data and operator
// subspaces. Expected values are hand-computed and frozen.

#include <gtest/gtest.h>

#include "qrelkit/random.hpp"
#include "test_util.hpp"

namespace qrelkit {
namespace {

using test::unit;

TEST(MarkovTrace, FullMatrixUnit) {
  const MultiMatrixAlgebra m({2});
  EXPECT_NEAR(std::abs(markov_trace(m, m.one()) - Complex(4.0)), 0.0, 1e-14);
}

TEST(MarkovTrace, CommutativeUnit) {
  const MultiMatrixAlgebra m({1, 1});
  EXPECT_NEAR(std::abs(markov_trace(m, m.one()) - Complex(2.0)), 0.0, 1e-14);
}

TEST(MarkovTrace, BlockUnitOfSum) {
  const MultiMatrixAlgebra m({2, 3});
  EXPECT_NEAR(std::abs(markov_trace(m, m.block_unit(0)) - Complex(4.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(markov_trace(m, m.block_unit(1)) - Complex(9.0)), 0.0, 1e-14);
}

TEST(Algebra, CoordinatesRoundTrip) {
  Rng rng(7);
  const MultiMatrixAlgebra m({2, 1, 3});
  EXPECT_EQ(m.dim(), 4 + 1 + 9);
  EXPECT_EQ(m.unit_dim(), 6);
  const AlgebraElement x = random::element(rng, m);
  EXPECT_LT((m.element(m.coords(x)) - x).max_abs(), 1e-15);
  EXPECT_LT((m.from_dense(m.dense(x)) - x).max_abs(), 1e-15);
}

TEST(Algebra, RejectsEmptyAndZeroBlocks) {
  EXPECT_THROW(MultiMatrixAlgebra(std::vector<int>{}), InputError);
  EXPECT_THROW(MultiMatrixAlgebra({2, 0}), InputError);
}

TEST(Representation, EmbedIsUnitalStarHom) {
  Rng rng(11);
  const MultiMatrixAlgebra m({2, 1});
  const RepresentedAlgebra r(m, {2, 3}, random::unitary(rng, 2 * 2 + 3));
  const AlgebraElement x = random::element(rng, m), y = random::element(rng, m);
  EXPECT_LT(max_abs(r.embed(x * y) - r.embed(x) * r.embed(y)), 1e-13);
  EXPECT_LT(max_abs(r.embed(x.adjoint()) - r.embed(x).adjoint()), 1e-13);
  EXPECT_LT(max_abs(r.embed(m.one()) - identity(r.hilbert_dim())), 1e-13);
  EXPECT_LT((r.compress(r.embed(x)) - x).max_abs(), 1e-13);
}

TEST(Representation, CommutantDimensions) {
  EXPECT_EQ(span_of(3, 3, RepresentedAlgebra(MultiMatrixAlgebra({3}), {1}).commutant_basis()).dim(), 1);
  EXPECT_EQ(span_of(3, 3, RepresentedAlgebra(MultiMatrixAlgebra({1, 1, 1}), {1, 1, 1}).commutant_basis()).dim(), 3);
  EXPECT_EQ(span_of(4, 4, RepresentedAlgebra(MultiMatrixAlgebra({2}), {2}).commutant_basis()).dim(), 4);
}

TEST(Representation, StructuralCommutantMatchesNullspace) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const RepresentedAlgebra r = random::representation(rng, random::algebra(rng, {}));
    const int h = r.hilbert_dim();
    const OperatorSubspace a = span_of(h, h, r.commutant_basis());
    const OperatorSubspace b(h, h, commutant_by_nullspace(r));
    EXPECT_TRUE(equal_spaces(a, b, 1e-8)) << "trial " << t;
    EXPECT_EQ(a.dim(), r.commutant_dim());
  }
}

TEST(Functional, RejectsNonPositiveDensity) {
  const MultiMatrixAlgebra m({2});
  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 1.0;
  q(1, 1) = -1.0;
  EXPECT_THROW(Functional(m, {q}), InputError);
}

TEST(Modular, TracialSigmaIsTrivial) {
  Rng rng(3);
  const MultiMatrixAlgebra m({2, 3});
  const GNSSpace g(Functional::markov_trace(m));
  const AlgebraElement x = random::element(rng, m);
  EXPECT_LT((g.modular_sigma(Complex(0.3, -0.7), x) - x).max_abs(), 1e-13);
}

TEST(Modular, SigmaAtZeroIsIdentity) {
  Rng rng(4);
  const MultiMatrixAlgebra m({2});
  const GNSSpace g(Functional(m, {test::diag({1.0, 3.0})}));
  const AlgebraElement x = random::element(rng, m);
  EXPECT_LT((g.modular_sigma(0.0, x) - x).max_abs(), 1e-14);
}

TEST(Modular, SigmaMinusHalfIOnOffDiagonalUnit) {
  // Q = diag(1, 4): sigma_{-i/2}(e12) = Q^{1/2} e12 Q^{-1/2} = e12 / 2.
  const MultiMatrixAlgebra m({2});
  const GNSSpace g(Functional(m, {test::diag({1.0, 4.0})}));
  const AlgebraElement s = g.modular_sigma(Complex(0.0, -0.5), m.matrix_unit(0, 0, 1));
  AlgebraElement expected = m.zero();
  expected.block(0)(0, 1) = 0.5;
  EXPECT_LT((s - expected).max_abs(), 1e-14);
}

TEST(GNS, TracialFullMatrixHasTrivialNabla) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({3})));
  EXPECT_EQ(g.dim(), 9);
  EXPECT_LT(max_abs(g.nabla_power(1.0) - identity(9)), 1e-14);
}

TEST(GNS, NablaEigenvaluesAreDensityRatios) {
  const GNSSpace g(Functional(MultiMatrixAlgebra({2}), {test::diag({1.0, 2.0})}));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(g.nabla_power(1.0)));
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.begin(), ev.end());
  const std::vector<double> expected{0.5, 1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-13);
}

TEST(GNS, TracialJIsAdjoint) {
  Rng rng(9);
  const MultiMatrixAlgebra m({2});
  const GNSSpace g(Functional::markov_trace(m));
  const AlgebraElement x = random::element(rng, m);
  EXPECT_LT((g.apply_j(g.coords(x)) - g.coords(x.adjoint())).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GNS, JIsSigmaOfAdjoint) {
  Rng rng(10);
  const MultiMatrixAlgebra m({2, 1});
  const GNSSpace g(random::functional(rng, m));
  const AlgebraElement x = random::element(rng, m);
  const Vector expected = g.coords(g.modular_sigma(Complex(0.0, -0.5), x.adjoint()));
  EXPECT_LT((g.apply_j(g.coords(x)) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GNS, NablaActsByDensityConjugation) {
  Rng rng(12);
  const MultiMatrixAlgebra m({3});
  const Functional phi = random::functional(rng, m);
  const GNSSpace g(phi);
  const AlgebraElement x = random::element(rng, m);
  const AlgebraElement q = phi.density_element();
  const AlgebraElement qinv(std::vector<Matrix>{hermitian_power(q.block(0), -1.0)});
  EXPECT_LT((g.nabla_power(1.0) * g.coords(x) - g.coords(q * x * qinv)).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(GNS, MultiplicationIsCoisometryForMarkovTrace) {
  const GNSSpace g(Functional::markov_trace(MultiMatrixAlgebra({2, 3})));
  const Matrix mm = multiplication_map(g);
  EXPECT_LT(max_abs(mm * mm.adjoint() - identity(g.dim())), 1e-13);
}

// ---------------------------------------------------------------------------
// Operator subspaces.

TEST(Subspace, ZeroGeneratorGivesZeroSpace) { EXPECT_EQ(span_of(2, 2, {Matrix::Zero(2, 2)}).dim(), 0); }

TEST(Subspace, DependentGenerators) {
  EXPECT_EQ(span_of(2, 2, {unit(2, 0, 0), unit(2, 0, 0) + unit(2, 0, 1), unit(2, 0, 1)}).dim(), 2);
}

TEST(Subspace, CounterexampleGeneratorsAreIndependent) {
  EXPECT_EQ(span_of(2, 2, {test::u1(), test::u2()}).dim(), 2);
}

TEST(Subspace, ComposeMatrixUnits) {
  const OperatorSubspace a = span_of(2, 2, {unit(2, 0, 1)}), b = span_of(2, 2, {unit(2, 1, 0)});
  EXPECT_TRUE(equal_spaces(compose_spaces(a, b), span_of(2, 2, {unit(2, 0, 0)})));
}

TEST(Subspace, ComposeWithIdentityIsNoOp) {
  Rng rng(2);
  const OperatorSubspace v = span_of(3, 2, {random::ginibre(rng, 3, 2), random::ginibre(rng, 3, 2)});
  EXPECT_TRUE(equal_spaces(compose_spaces(v, span_of(2, 2, {identity(2)})), v));
}

TEST(Subspace, AdjointOfMatrixUnit) {
  EXPECT_TRUE(equal_spaces(adjoint_space(span_of(2, 2, {unit(2, 0, 1)})), span_of(2, 2, {unit(2, 1, 0)})));
  EXPECT_EQ(adjoint_space(span_of(2, 2, {test::u1()})).dim(), 1);
}

TEST(Subspace, Intersection) {
  const OperatorSubspace a = span_of(2, 2, {unit(2, 0, 0)});
  const OperatorSubspace b = span_of(2, 2, {unit(2, 0, 0) + unit(2, 1, 1), unit(2, 0, 0) - unit(2, 1, 1)});
  EXPECT_TRUE(equal_spaces(intersect(a, b), a));
}

TEST(Subspace, CompositionIsAssociative) {
  Rng rng(21);
  auto rand_space = [&](int r, int c, int k) {
    std::vector<Matrix> g;
    for (int i = 0; i < k; ++i) g.push_back(random::ginibre(rng, r, c));
    return span_of(r, c, g);
  };
  const OperatorSubspace u = rand_space(2, 3, 1), v = rand_space(3, 2, 1), w = rand_space(2, 4, 2);
  EXPECT_TRUE(equal_spaces(compose_spaces(compose_spaces(u, v), w), compose_spaces(u, compose_spaces(v, w)), 1e-8));
}

TEST(Subspace, CanonicalFormIgnoresBasisChoice) {
  Rng rng(22);
  const Matrix a = random::ginibre(rng, 2, 3), b = random::ginibre(rng, 2, 3);
  EXPECT_TRUE(equal_spaces(span_of(2, 3, {a, b}), span_of(2, 3, {a + b, a - Complex(0.0, 2.0) * b})));
}

}  // namespace
}  // namespace qrelkit
