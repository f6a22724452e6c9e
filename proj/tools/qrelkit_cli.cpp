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

// qrelkit command-line front end. Every command reads JSON documents, calls
// one library entry point and writes a single JSON document.
//
// Exit codes: 0 success, 1 input or validation failure (including usage
// errors and failed verification), 2 internal-consistency failure.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qrelkit/io.hpp"
#include "qrelkit/suites.hpp"

namespace {

using qrelkit::io::Json;
namespace io = qrelkit::io;
namespace q = qrelkit;

struct Options {
  double tol = q::kDefaultTol;
  std::uint64_t seed = 42;
  int trials = -1;
  int max_block = 3;
  std::string out;
  std::string format = "json";
  bool tol_given = false;
};

// A failed claim list is an internal-consistency failure of the library.
struct CommandResult {
  Json doc;
  int exit_code = 0;
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream f(path);
  if (!f) throw q::InputError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json load(const std::string& path) { return io::parse_text(read_input(path)); }

q::Functional state_or_markov(const std::string& path, const q::MultiMatrixAlgebra& m, const std::string& where) {
  if (path.empty()) return q::Functional::markov_trace(m);
  const q::Functional phi = io::functional_from_json(load(path), where);
  if (!(phi.algebra() == m)) throw q::InputError(where + ": state is on a different algebra");
  return phi;
}

CommandResult claims_result(const std::string& command, const std::vector<q::Claim>& claims, Json extra) {
  Json rep = io::report(command, claims);
  for (auto it = extra.begin(); it != extra.end(); ++it) rep[it.key()] = it.value();
  return {rep, rep["ok"].get<bool>() ? 0 : 2};
}

CommandResult relation_check(const Options& o, const std::string& in) {
  const q::QuantumRelation v = io::relation_from_json(load(in), o.tol);
  Json extra;
  extra["dim"] = v.dim();
  extra["flags"] = io::flags_to_json(q::properties(v, o.tol));
  const double r = q::bimodule_residual(v.source(), v.target(), v.space());
  return claims_result("relation check", {{"N' V M' = V", v.dim(), v.dim(), r, r <= std::sqrt(o.tol)}}, extra);
}

CommandResult verify(const Options& o, const std::string& suite) {
  std::vector<const q::suites::SuiteInfo*> todo;
  if (suite == "all") {
    for (const auto& s : q::suites::registry()) todo.push_back(&s);
  } else if (const auto* s = q::suites::find_suite(suite)) {
    todo.push_back(s);
  }
  q::random::Limits lim;
  lim.max_block_size = o.max_block;
  Json doc = io::header("report");
  doc["command"] = "verify";
  doc["seed"] = o.seed;
  bool ok = true;
  Json list = Json::array();
  for (const auto* s : todo) {
    const q::suites::SuiteReport r = q::suites::run_suite(*s, o.seed, o.trials, o.tol_given ? o.tol : 0.0, lim);
    Json js{{"suite", r.name}, {"criterion", r.criterion}, {"tol", r.tol}, {"trials", r.records.size()},
            {"passed", r.passed()}, {"worst_residual", r.worst_residual()}};
    Json trials = Json::array(), failures = Json::array();
    for (const auto& t : r.records) {
      trials.push_back(Json{{"trial", t.trial}, {"seed", t.seed}, {"worst_residual", t.worst_residual},
                            {"claims", t.claims}, {"passed", t.passed()}});
      if (!t.error.empty()) failures.push_back(Json{{"trial", t.trial}, {"seed", t.seed}, {"error", t.error}});
      for (const auto& c : t.failures) {
        Json f = io::claim_to_json(c);
        f["trial"] = t.trial;
        f["seed"] = t.seed;
        failures.push_back(f);
      }
    }
    js["records"] = trials;
    js["failures"] = failures;
    ok = ok && r.passed();
    list.push_back(js);
  }
  doc["ok"] = ok;
  doc["suites"] = list;
  return {doc, ok ? 0 : 1};
}

void emit(const Options& o, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw q::InputError("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("QRELKIT_TOL")) {
    try {
      o.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: QRELKIT_TOL is not a number\n";
      return 1;
    }
  }

  CLI::App app{"qrelkit: quantum relations, CP maps and adjacency operators"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* tol_opt = app.add_option("--tol", o.tol, "numerical tolerance (default 1e-9 or $QRELKIT_TOL)");
  app.add_option("--seed", o.seed, "seed for randomized commands");
  app.add_option("--trials", o.trials, "trial count for verify (default: per suite)");
  app.add_option("--max-block", o.max_block, "largest random block size for verify")->check(CLI::Range(1, 3));
  app.add_option("--out", o.out, "write the result document here instead of stdout");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json"}));

  std::function<CommandResult()> action;
  std::string in1, in2, in3, source_state, target_state, x0_path, suite;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    return parent->add_subcommand(name, help);
  };
  auto input = [](CLI::App* c, std::string& dst, const std::string& name, const std::string& help) {
    c->add_option(name, dst, help)->required();
  };

  // relation
  auto* rel = app.add_subcommand("relation", "quantum relations")->require_subcommand(1);
  auto* rc = leaf(rel, "check", "report properties of a relation");
  input(rc, in1, "relation", "relation document ('-' for stdin)");
  rc->callback([&] { action = [&] { return relation_check(o, in1); }; });
  auto* rcomp = leaf(rel, "compose", "V o W (W applied first)");
  input(rcomp, in1, "V", "outer relation");
  input(rcomp, in2, "W", "inner relation");
  rcomp->callback([&] {
    action = [&] {
      return CommandResult{io::relation_to_json(q::compose_relations(io::relation_from_json(load(in1), o.tol),
                                                                     io::relation_from_json(load(in2), o.tol), o.tol))};
    };
  });
  auto* radj = leaf(rel, "adjoint", "V*");
  input(radj, in1, "relation", "relation document");
  radj->callback([&] {
    action = [&] { return CommandResult{io::relation_to_json(q::adjoint_relation(io::relation_from_json(load(in1), o.tol)))}; };
  });

  // hom
  auto* hom = app.add_subcommand("hom", "*-homomorphisms")->require_subcommand(1);
  auto* h2r = leaf(hom, "to-relation", "intertwiner relation of a *-homomorphism");
  input(h2r, in1, "hom", "hom document");
  h2r->callback([&] {
    action = [&] {
      const io::MapDocument d = io::map_from_json(load(in1), o.tol);
      return CommandResult{io::relation_to_json(q::relation_of_hom(q::Hom(d.map), d.target_rep, d.source_rep, o.tol))};
    };
  });
  auto* r2h = leaf(hom, "from-relation", "*-homomorphism of a coinjective relation");
  input(r2h, in1, "relation", "relation document");
  r2h->callback([&] {
    action = [&] {
      const q::QuantumRelation v = io::relation_from_json(load(in1), o.tol);
      const q::HomRecovery h = q::hom_of_relation(v, o.tol);
      Json doc = io::map_to_json(h.hom.map(), v.target(), v.source(), "hom");
      doc["residual"] = h.residual;
      return CommandResult{doc};
    };
  });

  // cp
  auto* cp = app.add_subcommand("cp", "completely positive maps")->require_subcommand(1);
  auto* c2r = leaf(cp, "to-relation", "relation V^theta of a CP map");
  input(c2r, in1, "cpmap", "CP map document");
  c2r->callback([&] {
    action = [&] {
      const io::MapDocument d = io::map_from_json(load(in1), o.tol);
      return CommandResult{io::relation_to_json(q::relation_of_cp(d.map, d.target_rep, d.source_rep, o.tol))};
    };
  });
  auto* conf = leaf(cp, "confusability", "confusability graph V^{theta*} V^theta");
  input(conf, in1, "cpmap", "CP map document");
  conf->callback([&] {
    action = [&] {
      const io::MapDocument d = io::map_from_json(load(in1), o.tol);
      return CommandResult{io::relation_to_json(q::confusability_graph(d.map, d.target_rep, d.source_rep, o.tol))};
    };
  });
  auto* pb = leaf(cp, "pullback", "pull a relation M -> N back along theta_M : M -> M2, theta_N : N -> N2");
  input(pb, in1, "relation", "relation document");
  input(pb, in2, "theta_m", "CP map document for theta_M");
  input(pb, in3, "theta_n", "CP map document for theta_N");
  pb->callback([&] {
    action = [&] {
      const q::QuantumRelation v = io::relation_from_json(load(in1), o.tol);
      const io::MapDocument tm = io::map_from_json(load(in2), o.tol);
      const io::MapDocument tn = io::map_from_json(load(in3), o.tol);
      if (!tm.source_rep.same_as(v.source()) || !tn.source_rep.same_as(v.target()))
        throw q::InputError("pullback: map sources must be the relation's source and target");
      return CommandResult{io::relation_to_json(q::pullback(v, tm.map, tm.target_rep, tn.map, tn.target_rep, o.tol))};
    };
  });

  // adjacency
  auto* adj = app.add_subcommand("adjacency", "quantum adjacency operators")->require_subcommand(1);
  auto* aor = leaf(adj, "of-relation", "adjacency operator of a relation (Markov traces unless states given)");
  input(aor, in1, "relation", "relation document");
  aor->add_option("--source-state", source_state, "state document for the source algebra");
  aor->add_option("--target-state", target_state, "state document for the target algebra");
  aor->callback([&] {
    action = [&] {
      const q::QuantumRelation v = io::relation_from_json(load(in1), o.tol);
      const q::GNSSpace m(state_or_markov(source_state, v.source().algebra(), "source_state"));
      const q::GNSSpace n(state_or_markov(target_state, v.target().algebra(), "target_state"));
      const q::QuantumRelation w = q::transport(v, m.representation(), n.representation(), o.tol);
      return CommandResult{io::adjacency_to_json(q::adjacency_of_relation(w, m, n, o.tol))};
    };
  });
  auto* aoh = leaf(adj, "of-hom", "adjacency operator of a *-homomorphism N -> M");
  input(aoh, in1, "hom", "hom document");
  aoh->add_option("--source-state", source_state, "state on M (the GNS source)");
  aoh->add_option("--target-state", target_state, "state on N (the GNS target)");
  aoh->callback([&] {
    action = [&] {
      const io::MapDocument d = io::map_from_json(load(in1), o.tol);
      const q::Hom h(d.map);
      const q::Functional pm = state_or_markov(source_state, h.target(), "source_state");
      const q::Functional pn = state_or_markov(target_state, h.source(), "target_state");
      const q::HomAdjacency ha = q::adjacency_of_hom(h, pm, pn, o.tol);
      Json extra;
      extra["adjacency"] = io::adjacency_to_json(ha.a);
      extra["u"] = io::element_to_json(ha.u);
      return claims_result("adjacency of-hom", ha.claims, extra);
    };
  });
  auto* acl = leaf(adj, "classify", "CP / real / Schur-idempotent / projection classification");
  input(acl, in1, "adjacency", "adjacency document");
  acl->callback([&] {
    action = [&] {
      const q::Classification c = q::classify(io::adjacency_from_json(load(in1)), o.tol);
      Json doc = io::header("report");
      doc["command"] = "adjacency classify";
      doc["ok"] = c.equivalences_hold;
      doc["cp"] = c.cp;
      doc["real"] = c.real;
      doc["schur_idempotent"] = c.schur_idempotent;
      doc["psi_projection"] = c.psi_projection;
      doc["equivalences_hold"] = c.equivalences_hold;
      doc["min_eigenvalue"] = c.min_eigenvalue;
      doc["idempotency_residual"] = c.idempotency_residual;
      doc["realness_residual"] = c.realness_residual;
      doc["projection_residual"] = c.projection_residual;
      return CommandResult{doc, c.equivalences_hold ? 0 : 2};
    };
  });

  // construct
  auto* con = app.add_subcommand("construct", "CP maps realizing quantum graphs")->require_subcommand(1);
  auto* cv = leaf(con, "verdon", "CP map theta with V^{theta*} V^theta = S for a quantum graph S");
  input(cv, in1, "relation", "symmetric reflexive relation");
  cv->callback([&] {
    action = [&] {
      const q::QuantumRelation s = io::relation_from_json(load(in1), o.tol);
      const q::Construction c = q::verdon_construct(s, o.tol);
      Json extra;
      extra["kraus_count"] = c.kraus_count;
      extra["theta"] = io::map_to_json(c.theta, q::full_matrix_rep(c.kraus_count), s.source());
      return claims_result("construct verdon", c.claims, extra);
    };
  });
  auto* cq = leaf(con, "qg-from-cp", "CP map with V^{theta*} V^theta = S and theta(1) = x0");
  input(cq, in1, "relation", "symmetric relation");
  cq->add_option("--x0", x0_path, "JSON file with x0 as one matrix per block (searched for if absent)");
  cq->callback([&] {
    action = [&] {
      const q::QuantumRelation s = io::relation_from_json(load(in1), o.tol);
      std::optional<q::AlgebraElement> x0;
      if (!x0_path.empty())
        x0 = io::element_from_json(load(x0_path), s.source().algebra(), "x0");
      else
        x0 = q::find_x0(s, 8, o.seed, o.tol);
      if (!x0) throw q::ValidationError("qg-from-cp: no admissible x0 found");
      const q::Construction c = q::qg_from_cp_construct(s, *x0, o.tol);
      Json extra;
      extra["x0"] = io::element_to_json(*x0);
      extra["theta"] = io::map_to_json(c.theta, q::full_matrix_rep(c.theta.source().block_size(0)), s.source());
      return claims_result("construct qg-from-cp", c.claims, extra);
    };
  });

  // classical
  auto* cl = app.add_subcommand("classical", "classical relations and channels")->require_subcommand(1);
  auto* ci = leaf(cl, "import", "classical relation or channel -> quantum relation");
  input(ci, in1, "document", "classical or channel document");
  ci->callback([&] {
    action = [&] {
      const Json j = load(in1);
      if (j.value("kind", "") == "channel") {
        const q::CPMap ch = io::channel_from_json(j, o.tol);
        return CommandResult{io::relation_to_json(q::relation_of_cp(
            ch, q::classical_rep(ch.target().num_blocks()), q::classical_rep(ch.source().num_blocks()), o.tol))};
      }
      return CommandResult{io::relation_to_json(io::relation_of_classical(io::classical_from_json(j)))};
    };
  });
  auto* ce = leaf(cl, "export", "quantum relation between commutative algebras -> pairs");
  input(ce, in1, "relation", "relation document");
  ce->callback([&] {
    action = [&] {
      return CommandResult{io::classical_to_json(io::classical_of_relation(io::relation_from_json(load(in1), o.tol), o.tol))};
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "randomized verification suites");
  std::vector<std::string> names{"all"};
  for (const auto& s : q::suites::registry()) names.push_back(s.name);
  ver->add_option("--suite", suite, "suite name or 'all'")->required()->check(CLI::IsMember(names));
  ver->callback([&] { action = [&] { return verify(o, suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  o.tol_given = tol_opt->count() > 0 || std::getenv("QRELKIT_TOL") != nullptr;
  if (!(o.tol > 0.0)) {
    std::cerr << "error: tolerance must be positive\n";
    return 1;
  }

  try {
    const CommandResult r = action();
    emit(o, r.doc);
    if (r.exit_code == 1) std::cerr << "verification failed; see 'failures' for reproducer seeds\n";
    return r.exit_code;
  } catch (const q::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 2;
  } catch (const q::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const q::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
