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

// JSON documents. Complex scalars are [re, im] (a bare number is read as a
// real scalar), matrices are arrays of rows. Every emitted document carries
// "kind" and "format_version"; emit(parse(d)) reproduces canonical documents.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qrelkit/adjacency.hpp"

namespace qrelkit::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed document at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline int to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(where + ": expected a complex scalar [re, im]");
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Shape is taken from the rows; an empty array is a 0 x 0 matrix unless
// expected dimensions say otherwise.
inline Matrix matrix_from_json(const Json& j, const std::string& where, int rows = -1, int cols = -1) {
  if (!j.is_array()) throw InputError(where + ": expected a matrix (array of rows)");
  const int r = static_cast<int>(j.size());
  int c = r == 0 ? std::max(cols, 0) : -1;
  Matrix m;
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array()) throw InputError(where + ": row " + std::to_string(i) + " is not an array");
    if (c < 0) {
      c = static_cast<int>(j[i].size());
      m.resize(r, c);
    }
    if (static_cast<int>(j[i].size()) != c) throw InputError(where + ": ragged matrix");
    for (int k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k], where);
  }
  if (r == 0) m.resize(std::max(rows, 0), c);
  if ((rows >= 0 && m.rows() != rows) || (cols >= 0 && m.cols() != cols))
    throw InputError(where + ": expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  return m;
}

// ---------------------------------------------------------------------------
// Algebra descriptors: {"blocks": [...], "state": "markov_trace" | {"densities":
// [...]}, "multiplicities": [...], "block_unitary": matrix}. The last two are
// optional (all-one multiplicities, standard basis).

inline MultiMatrixAlgebra algebra_from_json(const Json& j, const std::string& where = "algebra") {
  const Json& b = field(j, "blocks", where);
  if (!b.is_array() || b.empty()) throw InputError(where + ": 'blocks' must be a non-empty array");
  std::vector<int> blocks;
  for (const auto& n : b) {
    const int v = to_int(n, where + ".blocks");
    if (v < 1) throw InputError(where + ": block sizes must be positive");
    blocks.push_back(v);
  }
  return MultiMatrixAlgebra(blocks);
}

inline RepresentedAlgebra rep_from_json(const Json& j, const std::string& where = "algebra") {
  MultiMatrixAlgebra m = algebra_from_json(j, where);
  std::vector<int> mult(static_cast<size_t>(m.num_blocks()), 1);
  if (j.contains("multiplicities")) {
    const Json& mj = j.at("multiplicities");
    if (!mj.is_array() || static_cast<int>(mj.size()) != m.num_blocks())
      throw InputError(where + ": one multiplicity per block expected");
    for (size_t a = 0; a < mj.size(); ++a) {
      mult[a] = to_int(mj[a], where + ".multiplicities");
      if (mult[a] < 1) throw InputError(where + ": multiplicities must be positive");
    }
  }
  Matrix u;
  if (j.contains("block_unitary")) {
    int h = 0;
    for (int a = 0; a < m.num_blocks(); ++a) h += m.block_size(a) * mult[static_cast<size_t>(a)];
    u = matrix_from_json(j.at("block_unitary"), where + ".block_unitary", h, h);
    if (max_abs(u.adjoint() * u - identity(h)) > 1e-9) throw InputError(where + ": block_unitary is not unitary");
  }
  return RepresentedAlgebra(std::move(m), std::move(mult), std::move(u));
}

inline Functional functional_from_json(const Json& j, const std::string& where = "algebra") {
  const MultiMatrixAlgebra m = algebra_from_json(j, where);
  if (!j.contains("state") || (j.at("state").is_string() && j.at("state") == "markov_trace"))
    return Functional::markov_trace(m);
  const Json& d = field(j.at("state"), "densities", where + ".state");
  if (!d.is_array() || static_cast<int>(d.size()) != m.num_blocks())
    throw InputError(where + ": one density per block expected");
  std::vector<Matrix> dens;
  for (int a = 0; a < m.num_blocks(); ++a)
    dens.push_back(matrix_from_json(d[static_cast<size_t>(a)], where + ".state.densities", m.block_size(a),
                                    m.block_size(a)));
  try {
    return Functional(m, std::move(dens));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline Json algebra_to_json(const MultiMatrixAlgebra& m) { return Json{{"blocks", m.blocks()}}; }

inline Json rep_to_json(const RepresentedAlgebra& r) {
  Json j = algebra_to_json(r.algebra());
  j["multiplicities"] = r.multiplicities();
  if (!r.has_standard_basis()) j["block_unitary"] = matrix_to_json(r.block_unitary());
  return j;
}

inline Json functional_to_json(const Functional& phi) {
  Json j = algebra_to_json(phi.algebra());
  if (phi.is_markov_trace()) {
    j["state"] = "markov_trace";
  } else {
    Json d = Json::array();
    for (const auto& q : phi.densities()) d.push_back(matrix_to_json(q));
    j["state"] = Json{{"densities", d}};
  }
  return j;
}

// Algebra elements: one matrix per block, [[block0], [block1], ...].
inline AlgebraElement element_from_json(const Json& j, const MultiMatrixAlgebra& m, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != m.num_blocks())
    throw InputError(where + ": one matrix per block expected");
  std::vector<Matrix> blocks;
  for (int a = 0; a < m.num_blocks(); ++a)
    blocks.push_back(matrix_from_json(j[static_cast<size_t>(a)], where, m.block_size(a), m.block_size(a)));
  return AlgebraElement(std::move(blocks));
}

inline Json element_to_json(const AlgebraElement& x) {
  Json j = Json::array();
  for (const auto& b : x.blocks()) j.push_back(matrix_to_json(b));
  return j;
}

inline Json header(const std::string& kind) { return Json{{"kind", kind}, {"format_version", kFormatVersion}}; }

inline void check_kind(const Json& j, std::initializer_list<const char*> kinds, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": document must be a JSON object");
  if (j.contains("format_version") && j.at("format_version") != kFormatVersion)
    throw InputError(where + ": unsupported format_version");
  if (!j.contains("kind")) return;
  for (const char* k : kinds)
    if (j.at("kind") == k) return;
  throw InputError(where + ": unexpected document kind " + j.at("kind").dump());
}

// ---------------------------------------------------------------------------
// Relations: {"source": rep, "target": rep, "generators": [matrix...],
// "close": bool}. Generators are operators H_source -> H_target; with close
// set they are replaced by the bimodule they generate.

inline QuantumRelation relation_from_json(const Json& j, double tol = kDefaultTol) {
  check_kind(j, {"relation"}, "relation");
  const RepresentedAlgebra src = rep_from_json(field(j, "source", "relation"), "relation.source");
  const RepresentedAlgebra tgt = rep_from_json(field(j, "target", "relation"), "relation.target");
  const Json& g = field(j, "generators", "relation");
  if (!g.is_array()) throw InputError("relation: 'generators' must be an array");
  std::vector<Matrix> gens;
  for (const auto& m : g)
    gens.push_back(matrix_from_json(m, "relation.generators", tgt.hilbert_dim(), src.hilbert_dim()));
  const bool close = j.value("close", false);
  return make_relation(src, tgt, gens, close, tol);
}

inline Json relation_to_json(const QuantumRelation& v) {
  Json j = header("relation");
  j["source"] = rep_to_json(v.source());
  j["target"] = rep_to_json(v.target());
  j["dims"] = {v.space().rows(), v.space().cols()};
  Json g = Json::array();
  for (const auto& b : v.space().basis()) g.push_back(matrix_to_json(b));
  j["generators"] = g;
  j["close"] = false;
  return j;
}

// ---------------------------------------------------------------------------
// CP maps theta : N -> M. {"source": N, "target": M} plus either "action"
// (dim M x dim N, on algebra coordinates) or "kraus" (operators H_M -> H_N,
// theta(y) = sum b* y b). "kind": "hom" additionally requires a
// *-homomorphism.

struct MapDocument {
  CPMap map;
  RepresentedAlgebra source_rep;
  RepresentedAlgebra target_rep;
};

inline MapDocument map_from_json(const Json& j, double tol = kDefaultTol) {
  check_kind(j, {"cpmap", "hom"}, "cpmap");
  const RepresentedAlgebra n = rep_from_json(field(j, "source", "cpmap"), "cpmap.source");
  const RepresentedAlgebra m = rep_from_json(field(j, "target", "cpmap"), "cpmap.target");
  CPMap map;
  if (j.contains("action")) {
    map = make_cp(n.algebra(), m.algebra(),
                  matrix_from_json(j.at("action"), "cpmap.action", m.algebra().dim(), n.algebra().dim()), tol);
  } else if (j.contains("kraus")) {
    std::vector<Matrix> ks;
    for (const auto& k : j.at("kraus"))
      ks.push_back(matrix_from_json(k, "cpmap.kraus", n.hilbert_dim(), m.hilbert_dim()));
    map = cp_from_kraus(n, m, ks, tol);
  } else {
    throw InputError("cpmap: needs 'action' or 'kraus'");
  }
  if (j.value("kind", "cpmap") == "hom" && !map.is_hom())
    throw ValidationError("hom document does not describe a *-homomorphism");
  return {std::move(map), n, m};
}

inline Json map_to_json(const CPMap& theta, const RepresentedAlgebra& n, const RepresentedAlgebra& m,
                        const std::string& kind = "cpmap") {
  Json j = header(kind);
  j["source"] = rep_to_json(n);
  j["target"] = rep_to_json(m);
  j["action"] = matrix_to_json(theta.action());
  return j;
}

// Classical channel {"p": rows p[x][y]}, theta : l^inf(Y) -> l^inf(X).
inline CPMap channel_from_json(const Json& j, double tol = kDefaultTol) {
  check_kind(j, {"channel"}, "channel");
  const Json& p = field(j, "p", "channel");
  if (!p.is_array()) throw InputError("channel: 'p' must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : p) {
    if (!r.is_array()) throw InputError("channel: 'p' must be an array of rows");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw InputError("channel: probabilities must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return classical_channel(rows, tol);
  } catch (const ValidationError& e) {
    throw InputError(std::string("channel: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Classical relations {"x_size", "y_size", "pairs": [[y, x], ...]} with
// 1-based labels; R is a subset of Y x X.

struct ClassicalRelation {
  int x_size = 0;
  int y_size = 0;
  std::vector<std::pair<int, int>> pairs;  // 0-based (y, x)
};

inline ClassicalRelation classical_from_json(const Json& j) {
  check_kind(j, {"classical"}, "classical");
  ClassicalRelation c;
  c.x_size = to_int(field(j, "x_size", "classical"), "classical.x_size");
  c.y_size = to_int(field(j, "y_size", "classical"), "classical.y_size");
  if (c.x_size < 1 || c.y_size < 1) throw InputError("classical: sizes must be positive");
  const Json& p = field(j, "pairs", "classical");
  if (!p.is_array()) throw InputError("classical: 'pairs' must be an array");
  for (const auto& e : p) {
    if (!e.is_array() || e.size() != 2) throw InputError("classical: each pair is [y, x]");
    const int y = to_int(e[0], "classical.pairs"), x = to_int(e[1], "classical.pairs");
    if (y < 1 || y > c.y_size || x < 1 || x > c.x_size) throw InputError("classical: pair out of range");
    c.pairs.emplace_back(y - 1, x - 1);
  }
  return c;
}

inline Json classical_to_json(const ClassicalRelation& c) {
  Json j = header("classical");
  j["x_size"] = c.x_size;
  j["y_size"] = c.y_size;
  Json p = Json::array();
  for (auto [y, x] : c.pairs) p.push_back({y + 1, x + 1});
  j["pairs"] = p;
  return j;
}

inline QuantumRelation relation_of_classical(const ClassicalRelation& c) {
  return from_classical(classical_rep(c.x_size), classical_rep(c.y_size), c.pairs);
}

inline ClassicalRelation classical_of_relation(const QuantumRelation& v, double tol = kDefaultTol) {
  return {v.source().algebra().num_blocks(), v.target().algebra().num_blocks(), to_classical(v, tol)};
}

// ---------------------------------------------------------------------------
// Adjacency operators {"gns_matrix", "source_state", "target_state"}, the
// states being algebra descriptors with a "state" field.

inline GNSOperator adjacency_from_json(const Json& j) {
  check_kind(j, {"adjacency"}, "adjacency");
  const GNSSpace src(functional_from_json(field(j, "source_state", "adjacency"), "adjacency.source_state"));
  const GNSSpace tgt(functional_from_json(field(j, "target_state", "adjacency"), "adjacency.target_state"));
  return GNSOperator(src, tgt, matrix_from_json(field(j, "gns_matrix", "adjacency"), "adjacency.gns_matrix",
                                                tgt.dim(), src.dim()));
}

inline Json adjacency_to_json(const GNSOperator& a) {
  Json j = header("adjacency");
  j["source_state"] = functional_to_json(a.source().functional());
  j["target_state"] = functional_to_json(a.target().functional());
  j["gns_matrix"] = matrix_to_json(a.matrix());
  return j;
}

// ---------------------------------------------------------------------------
// Reports.

inline Json claim_to_json(const Claim& c) {
  return Json{{"claim", c.claim}, {"lhs_dim", c.lhs_dim}, {"rhs_dim", c.rhs_dim}, {"residual", c.residual},
              {"holds", c.holds}};
}

inline Json report(const std::string& command, const std::vector<Claim>& claims) {
  Json j = header("report");
  j["command"] = command;
  bool ok = true;
  Json cl = Json::array();
  for (const auto& c : claims) {
    ok = ok && c.holds;
    cl.push_back(claim_to_json(c));
  }
  j["ok"] = ok;
  j["claims"] = cl;
  return j;
}

inline Json flags_to_json(const RelationFlags& f) {
  Json j{{"coinjective", f.coinjective}, {"cosurjective", f.cosurjective}, {"injective", f.injective},
         {"surjective", f.surjective},   {"partial_function", f.partial_function}, {"function", f.function}};
  if (f.symmetric) j["symmetric"] = *f.symmetric;
  if (f.reflexive) j["reflexive"] = *f.reflexive;
  return j;
}

}  // namespace qrelkit::io
