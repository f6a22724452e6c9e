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

#include <cmath>
#include <vector>

#include "qrelkit/construct.hpp"

namespace qrelkit::test {

inline Matrix unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline Matrix diag(const std::vector<double>& d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return m;
}

// Pair with u1* u1 - u2* u2 = 1 whose span is cosurjective but not the
// relation of any UCP map into M_2.
inline Matrix u1() {
  Matrix u(2, 2);
  u << 3.0, 2.0, -3.0, 2.0;
  return u / std::sqrt(2.0);
}

inline Matrix u2() { return diag({std::sqrt(8.0), std::sqrt(3.0)}); }

inline RepresentedAlgebra full(int n, int mult = 1) { return RepresentedAlgebra(MultiMatrixAlgebra({n}), {mult}); }

inline AlgebraElement blocks(std::vector<Matrix> b) { return AlgebraElement(std::move(b)); }

}  // namespace qrelkit::test
