// Copyright 2026 The qgroup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hidden subgroup solvers: Fourier sampling over finite abelian groups, the
// two-stage sampler for W_n, and the classical exhaustive baseline.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgroup/f2.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/qsim.hpp"
#include "qgroup/rng.hpp"
#include "qgroup/wreath.hpp"

namespace qgroup {

struct AbelianHspInstance {
  AbelianGroup group;
  OracleTable oracle;
  std::optional<Subgroup> true_subgroup;
};

struct WreathHspInstance {
  int n = 1;
  OracleTable oracle;
  std::optional<WreathSubgroup> true_subgroup;
};

// Oracles labelling each coset by the order in which it first appears when
// the group is scanned by index; f(identity) = 0.
AbelianHspInstance make_abelian_instance(const Subgroup& H);
WreathHspInstance make_wreath_instance(const WreathSubgroup& U);

// Exhaustive check that f is constant on cosets and distinct across them.
bool separates_cosets(const AbelianHspInstance& instance);
bool separates_cosets(const WreathHspInstance& instance);

struct SolverReport {
  std::vector<std::string> recovered_generators;
  std::int64_t oracle_evaluations = 0;
  std::int64_t rounds = 0;
  // The solver certified its answer and, when the instance carries the true
  // subgroup, the answer matches it.
  bool success = false;
  bool budget_exceeded = false;
};

struct AbelianHspResult {
  Subgroup recovered;
  SolverReport report;
};

struct WreathHspResult {
  WreathSubgroup recovered;
  SolverReport report;
  std::int64_t batches = 0;
};

// Superposition, oracle, value measurement, QFT, group measurement.
Character sample_character(AbelianHspInstance& instance, Rng& rng);

// Common kernel of the characters.
Subgroup kernel_of_characters(const AbelianGroup& G, const std::vector<Character>& chars);

inline constexpr int kStableRounds = 4;

// Draws characters until the running kernel has not shrunk for kStableRounds
// draws and every basis element of it maps to f(identity), or max_rounds is
// reached (budget_exceeded, best-effort kernel returned).
AbelianHspResult solve_abelian_hsp(AbelianHspInstance& instance, Rng& rng,
                                   std::int64_t max_rounds = 1000);

inline constexpr int kWreathBatches = 5;

// Batches of 4n pipeline runs, alternating two measurements after the coset
// state is prepared:
//  - Hadamard on the 2n base qubits, then read (y, t). sigma^t(y) is
//    orthogonal to U n N.
//  - Hadamard on all 2n + 1 qubits. The outcome lies in U^perp or in
//    (U')^perp, U' the conjugate of U by the non-base coset representative.
// The nullspaces of the two sample sets always generate a group containing
// U; checking its generators against f(identity) certifies equality.
WreathHspResult solve_wn_hsp(WreathHspInstance& instance, Rng& rng,
                             int max_batches = kWreathBatches);

// Evaluates f on every element; exactly |G| evaluations. |G| <= 512.
Subgroup brute_force_hsp(const AbelianGroup& G, OracleTable& oracle);
WreathSubgroup brute_force_hsp(int n, OracleTable& oracle);

inline constexpr std::int64_t kMaxBruteForce = 512;

}  // namespace qgroup
