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

// Realizing quantum graphs as confusability graphs of CP maps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrelkit/adjacency.hpp"
#include "qrelkit/rng.hpp"

namespace qrelkit {

struct Construction {
  CPMap theta;  // B(C^r) -> M
  int kraus_count = 0;
  std::vector<Claim> claims;
  bool ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.holds; });
  }
};

inline RepresentedAlgebra full_matrix_rep(int r) { return RepresentedAlgebra(MultiMatrixAlgebra({r}), {1}); }

// For a symmetric reflexive S on M: A = 1 + t Psi'^{-1}(e - e0) with e, e0
// the projections onto S and M' (Markov trace), t = 1 / (2 |A1|), and
// theta(|i><j|) = a_i* a_j for A = sum_k |c(a_k)><c(a_k)|. Certificate:
// V^{theta*} V^theta = S.
inline Construction verdon_construct(const QuantumRelation& s, double tol = kDefaultTol) {
  require(s.source().same_as(s.target()), "verdon_construct: relation must be on a single algebra");
  const RelationFlags f = properties(s, tol);
  if (!*f.symmetric || !*f.reflexive) throw InputError("verdon_construct: relation must be symmetric and reflexive");
  const MultiMatrixAlgebra& m = s.source().algebra();
  const GNSSpace g(Functional::markov_trace(m));
  const RepresentedAlgebra gns = g.representation();
  const QuantumRelation sg = s.source().same_as(gns) ? s : transport(s, gns, gns, tol);
  const Matrix e = sg.space().projection();
  const Matrix e0 = commutant_space(gns).projection();
  double r = 0.0;
  const GNSOperator a1 = psi_prime_inv(e - e0, g, g, &r);
  if (r > std::sqrt(tol)) throw ConsistencyError("verdon_construct: e - e0 is not in M (x) M^op");
  Matrix a = identity(g.dim());
  const Eigen::JacobiSVD<Matrix> svd(a1.matrix());
  const double nrm = svd.singularValues()(0);
  if (nrm > tol) a += a1.matrix() / (2.0 * nrm);
  const double herm = max_abs(a - a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
  std::vector<AlgebraElement> ak;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > tol) ak.push_back(g.element(std::sqrt(es.eigenvalues()(i)) * es.eigenvectors().col(i)));
  const int rr = static_cast<int>(ak.size());
  const MultiMatrixAlgebra br({rr});
  Matrix action(m.dim(), br.dim());
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < rr; ++j) action.col(i * rr + j) = m.coords(ak[i].adjoint() * ak[j]);
  Construction out{CPMap(br, m, std::move(action), std::sqrt(tol)), rr, {}};
  out.claims.push_back({"A self-adjoint", 0, 0, herm, herm <= std::sqrt(tol)});
  out.claims.push_back({"theta completely positive", 0, 0, std::max(0.0, -out.theta.min_choi_eigenvalue()), out.theta.is_cp()});
  const QuantumRelation conf = confusability_graph(out.theta, s.source(), full_matrix_rep(rr), tol);
  out.claims.push_back(detail::space_claim("V^{theta*} V^theta = S", conf.space(), s.space(), std::sqrt(tol)));
  return out;
}

// First basis element s of S with f0 s f0 != s, where f0 = supp(x0).
inline std::optional<int> qg_condition_witness(const QuantumRelation& s, const AlgebraElement& x0,
                                               double tol = kDefaultTol) {
  const Matrix f0 = support_projection(s.source().embed(x0), tol);
  const auto basis = s.space().basis();
  for (size_t i = 0; i < basis.size(); ++i)
    if (max_abs(f0 * basis[i] * f0 - basis[i]) > std::sqrt(tol)) return static_cast<int>(i);
  return std::nullopt;
}

// S symmetric on M with x0 in S cap M positive and f0 s f0 = s for all s in
// S: theta = iota o theta1 o theta0, where theta0 realizes the reflexive
// graph S0 = x0^{-1/2} S x0^{-1/2} on the corner f0 M f0,
// theta1(x) = x0^{1/2} x x0^{1/2} and iota is the corner inclusion.
inline Construction qg_from_cp_construct(const QuantumRelation& s, const AlgebraElement& x0, double tol = kDefaultTol) {
  const RepresentedAlgebra& rep = s.source();
  require(rep.same_as(s.target()), "qg_from_cp_construct: relation must be on a single algebra");
  const MultiMatrixAlgebra& m = rep.algebra();
  m.check(x0);
  if (!*properties(s, tol).symmetric) throw InputError("qg_from_cp_construct: relation must be symmetric");
  const Matrix x0e = rep.embed(x0);
  if (min_eigenvalue(x0e) < -std::sqrt(tol) || max_abs(x0e - x0e.adjoint()) > std::sqrt(tol))
    throw InputError("qg_from_cp_construct: x0 is not positive");
  if (!contains(s.space(), x0e, std::sqrt(tol))) throw InputError("qg_from_cp_construct: x0 is not in S");
  if (auto w = qg_condition_witness(s, x0, tol))
    throw ValidationError("qg_from_cp_construct: f0 s f0 != s for basis element " + std::to_string(*w));

  // Corner algebra M0 = f0 M f0 on H0 = f0 H, blockwise supports P_a.
  std::vector<Matrix> supports;
  std::vector<int> kept, blocks0, mult0;
  for (int a = 0; a < m.num_blocks(); ++a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x0.block(a)));
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > tol * std::max(top, 1.0)) cols.push_back(i);
    Matrix p(m.block_size(a), static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) p.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    supports.push_back(p);
    if (!cols.empty()) {
      kept.push_back(a);
      blocks0.push_back(static_cast<int>(cols.size()));
      mult0.push_back(rep.multiplicity(a));
    }
  }
  if (kept.empty()) throw InputError("qg_from_cp_construct: x0 is zero");
  const MultiMatrixAlgebra m0(blocks0);
  const RepresentedAlgebra rep0(m0, mult0);
  // p0 : H -> H0.
  Matrix p0std = Matrix::Zero(rep0.hilbert_dim(), rep.hilbert_dim());
  for (size_t b = 0; b < kept.size(); ++b) {
    const int a = kept[b], k = rep.multiplicity(a);
    const Matrix blk = kron(supports[a].adjoint(), identity(k));
    p0std.block(rep0.std_offset(static_cast<int>(b)), rep.std_offset(a), blk.rows(), blk.cols()) = blk;
  }
  const Matrix p0 = p0std * rep.block_unitary().adjoint();
  std::vector<Matrix> x00;
  for (size_t b = 0; b < kept.size(); ++b) {
    const Matrix& p = supports[kept[b]];
    x00.push_back(hermitian_part(p.adjoint() * x0.block(kept[b]) * p));
  }
  const AlgebraElement x00e(x00);
  std::vector<Matrix> xmh, xh;
  for (const auto& x : x00) {
    xmh.push_back(hermitian_power(x, -0.5));
    xh.push_back(hermitian_power(x, 0.5));
  }
  const Matrix xmh_e = rep0.embed(AlgebraElement(xmh));
  const QuantumRelation s0(rep0, rep0, map_space(map_space(s.space(), p0, p0.adjoint(), tol), xmh_e, xmh_e, tol));

  const Construction c0 = verdon_construct(s0, tol);
  const MultiMatrixAlgebra& br = c0.theta.source();
  const AlgebraElement xhe(xh);
  const CPMap theta1 = cp_from_function(m0, m0, [&](const AlgebraElement& x) { return xhe * x * xhe; });
  const CPMap iota = cp_from_function(m0, m, [&](const AlgebraElement& x) {
    AlgebraElement y = m.zero();
    for (size_t b = 0; b < kept.size(); ++b) {
      const Matrix& p = supports[kept[b]];
      y.block(kept[b]) = p * x.block(static_cast<int>(b)) * p.adjoint();
    }
    return y;
  });
  const CPMap theta = compose_cp(iota, compose_cp(theta1, c0.theta, tol), tol);
  Construction out{theta, c0.kraus_count, c0.claims};
  const QuantumRelation conf = confusability_graph(theta, rep, full_matrix_rep(br.block_size(0)), tol);
  out.claims.push_back(detail::space_claim("V^{theta*} V^theta = S", conf.space(), s.space(), std::sqrt(tol)));
  const double unit_gap = (theta.apply(br.one()) - x0).max_abs();
  out.claims.push_back({"theta(1) = x0", 0, 0, unit_gap, !c0.theta.is_unital() || unit_gap <= std::sqrt(tol)});
  return out;
}

// Searches S cap M for a positive x0 whose support is the joint support
// f_min of S: maximise the smallest eigenvalue of f_min x f_min over unit
// Hermitian combinations, from several seeded starting points.
inline std::optional<AlgebraElement> find_x0(const QuantumRelation& s, int trials = 8, std::uint64_t seed = 1,
                                             double tol = kDefaultTol) {
  const RepresentedAlgebra& rep = s.source();
  require(rep.same_as(s.target()), "find_x0: relation must be on a single algebra");
  const int h = rep.hilbert_dim();
  const OperatorSubspace w = intersect(s.space(), span_of(h, h, rep.embedded_basis()), tol);
  if (w.dim() == 0) return std::nullopt;
  // Real basis of the Hermitian part of W.
  std::vector<Matrix> cand;
  for (const auto& b : w.basis()) {
    cand.push_back(hermitian_part(b));
    cand.push_back(hermitian_part(-kI * b));
  }
  RealMatrix stacked(2 * static_cast<Eigen::Index>(h) * h, static_cast<Eigen::Index>(cand.size()));
  for (size_t c = 0; c < cand.size(); ++c) {
    const Vector v = vec(cand[c]);
    stacked.col(static_cast<Eigen::Index>(c)) << v.real(), v.imag();
  }
  Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU);
  std::vector<Matrix> herm;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) <= tol * svd.singularValues()(0)) break;
    const RealVector u = svd.matrixU().col(i);
    Vector v(static_cast<Eigen::Index>(h) * h);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(u(k), u(k + v.size()));
    herm.push_back(hermitian_part(unvec(v, h, h)));
  }
  Matrix joint = Matrix::Zero(h, h);
  for (const auto& b : s.space().basis()) joint += b * b.adjoint() + b.adjoint() * b;
  const Matrix fmin = orthonormal_range(support_projection(joint, tol), tol);
  std::vector<Matrix> dirs;
  for (const auto& x : herm) dirs.push_back(fmin.adjoint() * x * fmin);
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    RealVector start(static_cast<Eigen::Index>(dirs.size()));
    for (Eigen::Index i = 0; i < start.size(); ++i) start(i) = rng.normal();
    const auto best = detail::maximize_min_eigenvalue(Matrix::Zero(fmin.cols(), fmin.cols()), dirs, start, true,
                                                      1e-3, 400);
    if (best.value <= 1e-6) continue;
    Matrix x = Matrix::Zero(h, h);
    for (size_t i = 0; i < herm.size(); ++i) x += best.t(static_cast<Eigen::Index>(i)) * herm[i];
    double r = 0.0;
    const AlgebraElement x0 = rep.unembed(x, &r);
    if (r > std::sqrt(tol)) continue;
    if (!qg_condition_witness(s, x0, tol)) return x0;
  }
  return std::nullopt;
}

}  // namespace qrelkit
