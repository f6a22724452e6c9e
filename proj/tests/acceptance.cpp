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

// Acceptance run: every criterion suite at its default trial count and
// tolerance, one PASS/FAIL line each. Usage: qrelkit_acceptance [seed].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qrelkit/suites.hpp"

int main(int argc, char** argv) {
  using namespace qrelkit;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  bool all = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& s : suites::registry()) {
    const suites::SuiteReport r = suites::run_suite(s, seed);
    int failed = 0;
    for (const auto& t : r.records) failed += t.passed() ? 0 : 1;
    std::printf("%s criterion %2d %-14s trials=%-3zu failed=%d worst_residual=%.3e tol=%.0e\n",
                r.passed() ? "PASS" : "FAIL", r.criterion, r.name.c_str(), r.records.size(), failed,
                r.worst_residual(), r.tol);
    for (const auto& t : r.records) {
      if (t.passed()) continue;
      if (!t.error.empty()) std::printf("    trial %d seed %llu: %s\n", t.trial, static_cast<unsigned long long>(t.seed), t.error.c_str());
      for (const auto& c : t.failures)
        std::printf("    trial %d seed %llu: %s (residual %.3e, dims %d/%d)\n", t.trial,
                    static_cast<unsigned long long>(t.seed), c.claim.c_str(), c.residual, c.lhs_dim, c.rhs_dim);
    }
    all = all && r.passed();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s all criteria (seed %llu, %.1f s)\n", all ? "PASS" : "FAIL", static_cast<unsigned long long>(seed), secs);
  return all ? 0 : 1;
}
