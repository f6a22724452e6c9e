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

// Seeded generators of random test instances: algebras, states,
// representations, relations, homomorphisms and CP maps.

#include <vector>

#include "qrelkit/qfunc.hpp"
#include "qrelkit/rng.hpp"

namespace qrelkit::random {

struct Limits {
  int max_blocks = 3;
  int max_block_size = 3;
  int max_gns_dim = 14;  // sum of n(a)^2
};

inline Matrix ginibre(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

// Haar unitary: QR of a Ginibre matrix with the phases of R divided out.
inline Matrix unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(rng, n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
  }
  return q;
}

inline std::vector<int> blocks(Rng& rng, const Limits& lim = {}) {
  while (true) {
    const int nb = rng.uniform_int(1, lim.max_blocks);
    std::vector<int> b;
    int d = 0;
    for (int i = 0; i < nb; ++i) {
      b.push_back(rng.uniform_int(1, lim.max_block_size));
      d += b.back() * b.back();
    }
    if (d <= lim.max_gns_dim) return b;
  }
}

inline MultiMatrixAlgebra algebra(Rng& rng, const Limits& lim = {}) { return MultiMatrixAlgebra(blocks(rng, lim)); }

inline AlgebraElement element(Rng& rng, const MultiMatrixAlgebra& m) {
  std::vector<Matrix> out;
  for (int n : m.blocks()) out.push_back(ginibre(rng, n, n));
  return AlgebraElement(std::move(out));
}

inline Matrix positive_definite(Rng& rng, int n, double lo = 0.5, double hi = 2.0) {
  const Matrix u = unitary(rng, n);
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = lo + (hi - lo) * rng.uniform();
  return hermitian_part(u * d.asDiagonal() * u.adjoint());
}

// Faithful functional with random densities (eigenvalues in [0.5, 2]).
inline Functional functional(Rng& rng, const MultiMatrixAlgebra& m) {
  std::vector<Matrix> q;
  for (int n : m.blocks()) q.push_back(positive_definite(rng, n));
  return Functional(m, std::move(q));
}

inline RepresentedAlgebra representation(Rng& rng, const MultiMatrixAlgebra& m, int max_mult = 2,
                                         bool random_basis = true) {
  std::vector<int> mult;
  int h = 0;
  for (int a = 0; a < m.num_blocks(); ++a) {
    mult.push_back(rng.uniform_int(1, max_mult));
    h += mult.back() * m.block_size(a);
  }
  return RepresentedAlgebra(m, mult, random_basis ? unitary(rng, h) : Matrix());
}

// Bimodule generated by a few product-form generators X (x) Y placed in
// random block pairs (in standard coordinates).
inline QuantumRelation relation(Rng& rng, const RepresentedAlgebra& source, const RepresentedAlgebra& target,
                                int max_gens = 3, double density = 0.6) {
  const auto& ms = source.algebra();
  const auto& mt = target.algebra();
  std::vector<Matrix> gens;
  const int count = rng.uniform_int(1, max_gens);
  for (int g = 0; g < count; ++g) {
    Matrix std_gen = Matrix::Zero(target.hilbert_dim(), source.hilbert_dim());
    bool any = false;
    for (int x = 0; x < ms.num_blocks(); ++x)
      for (int y = 0; y < mt.num_blocks(); ++y) {
        if (!rng.coin(density)) continue;
        any = true;
        const int nx = ms.block_size(x), ny = mt.block_size(y);
        const int kx = source.multiplicity(x), ky = target.multiplicity(y);
        std_gen.block(target.std_offset(y), source.std_offset(x), ny * ky, nx * kx) =
            kron(ginibre(rng, ny, nx), ginibre(rng, ky, kx));
      }
    if (!any) continue;
    gens.push_back(target.block_unitary() * std_gen * source.block_unitary().adjoint());
  }
  return make_relation(source, target, gens, true);
}

// Symmetric reflexive relation (quantum graph) on r.
inline QuantumRelation quantum_graph(Rng& rng, const RepresentedAlgebra& r, int max_gens = 2) {
  const QuantumRelation v = relation(rng, r, r, max_gens, 0.5);
  OperatorSubspace s = sum_spaces(sum_spaces(v.space(), adjoint_space(v.space())), commutant_space(r));
  return QuantumRelation(r, r, s);
}

struct RandomHom {
  MultiMatrixAlgebra source;
  MultiMatrixAlgebra target;
  Hom hom;
};

// theta : N -> M given by a Bratteli multiplicity matrix c (c[b][a] copies
// of block a inside block b) and random unitaries per target block. Target
// blocks may keep slack (non-unital) and source blocks may be dropped
// (non-injective).
inline Hom hom_between(Rng& rng, const MultiMatrixAlgebra& n, const MultiMatrixAlgebra& m,
                       const std::vector<std::vector<int>>& c) {
  std::vector<Matrix> w;
  for (int b = 0; b < m.num_blocks(); ++b) w.push_back(unitary(rng, m.block_size(b)));
  auto f = [&](const AlgebraElement& y) {
    std::vector<Matrix> out;
    for (int b = 0; b < m.num_blocks(); ++b) {
      const int nb = m.block_size(b);
      Matrix d = Matrix::Zero(nb, nb);
      int off = 0;
      for (int a = 0; a < n.num_blocks(); ++a) {
        const int na = n.block_size(a);
        for (int k = 0; k < c[b][a]; ++k) {
          d.block(off, off, na, na) = y.block(a);
          off += na;
        }
      }
      out.push_back(w[b] * d * w[b].adjoint());
    }
    return AlgebraElement(std::move(out));
  };
  return Hom(cp_from_function(n, m, f));
}

inline RandomHom hom(Rng& rng, const Limits& lim = {}, bool unital = false, bool from_given = false,
                     const MultiMatrixAlgebra& given = MultiMatrixAlgebra({1})) {
  while (true) {
    Limits small = lim;
    small.max_block_size = std::min(lim.max_block_size, 2);
    const MultiMatrixAlgebra n = from_given ? given : algebra(rng, small);
    const int mb = rng.uniform_int(1, lim.max_blocks);
    std::vector<int> mblocks;
    std::vector<std::vector<int>> c;
    int gns = 0;
    bool ok = true;
    for (int b = 0; b < mb && ok; ++b) {
      std::vector<int> row(n.num_blocks(), 0);
      int size = 0;
      for (int a = 0; a < n.num_blocks(); ++a) {
        const int k = rng.uniform_int(0, 1);
        if (size + k * n.block_size(a) <= lim.max_block_size) {
          row[a] = k;
          size += k * n.block_size(a);
        }
      }
      if (!unital && size < lim.max_block_size && rng.coin(0.4)) size += 1;
      if (size == 0) {
        ok = false;
        break;
      }
      mblocks.push_back(size);
      gns += size * size;
      c.push_back(row);
    }
    if (!ok || gns > lim.max_gns_dim) continue;
    const MultiMatrixAlgebra m(mblocks);
    return {n, m, hom_between(rng, n, m, c)};
  }
}

// CP map with a few random Kraus operators per target block; UCP when
// unital is set.
inline CPMap cp_map(Rng& rng, const MultiMatrixAlgebra& n, const MultiMatrixAlgebra& m, bool unital, int max_rank = 2) {
  std::vector<std::vector<Matrix>> ks;
  for (int b = 0; b < m.num_blocks(); ++b) {
    int rank = rng.uniform_int(1, max_rank);
    // Unital needs sum k* k invertible, i.e. rank * unit_dim >= block size.
    if (unital) rank = std::max(rank, (m.block_size(b) + n.unit_dim() - 1) / n.unit_dim());
    std::vector<Matrix> kb;
    for (int i = 0; i < rank; ++i) kb.push_back(ginibre(rng, n.unit_dim(), m.block_size(b)));
    if (unital) {
      Matrix p = Matrix::Zero(m.block_size(b), m.block_size(b));
      for (const auto& k : kb) p += k.adjoint() * n.dense(n.one()) * k;
      const Matrix s = hermitian_power(p, -0.5);
      for (auto& k : kb) k = k * s;
    }
    ks.push_back(std::move(kb));
  }
  auto f = [&](const AlgebraElement& y) {
    const Matrix yd = n.dense(y);
    std::vector<Matrix> out;
    for (int b = 0; b < m.num_blocks(); ++b) {
      Matrix t = Matrix::Zero(m.block_size(b), m.block_size(b));
      for (const auto& k : ks[b]) t += k.adjoint() * yd * k;
      out.push_back(t);
    }
    return AlgebraElement(std::move(out));
  };
  return cp_from_function(n, m, f);
}

}  // namespace qrelkit::random
