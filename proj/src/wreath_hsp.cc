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

#include <algorithm>
#include <unordered_map>

#include "qgroup/error.hpp"
#include "qgroup/hsp.hpp"

namespace qgroup {
namespace {

void check_instance(int n, const OracleTable& oracle) {
  if (n < 1 || n > kMaxWreathN) {
    throw Error(ErrorCode::kTooLarge, "W_n solver needs 1 <= n <= 4");
  }
  if (oracle.group_dim() != static_cast<std::int64_t>(w_order(n))) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle does not match W_n");
  }
}

// Index of the smallest element of the left coset xU.
std::uint32_t coset_label(const WreathSubgroup& U, const WreathElement& x) {
  std::uint32_t best = UINT32_MAX;
  for (const auto& u : U.elements()) best = std::min(best, w_index(w_compose(x, u)));
  return best;
}

// Swaps the a and b halves of a 2n-bit base vector.
BitVector swap_halves(BitVector y, int n) {
  const BitVector half = (BitVector{1} << n) - 1;
  return ((y & half) << n) | ((y >> n) & half);
}

}  // namespace

WreathHspInstance make_wreath_instance(const WreathSubgroup& U) {
  const int n = U.n();
  std::vector<std::int64_t> values(w_order(n));
  std::unordered_map<std::uint32_t, std::int64_t> label;
  for (std::uint32_t i = 0; i < w_order(n); ++i) {
    const auto next = static_cast<std::int64_t>(label.size());
    values[i] = label.emplace(coset_label(U, w_from_index(n, i)), next).first->second;
  }
  const auto cosets = static_cast<std::int64_t>(label.size());
  return WreathHspInstance{n, OracleTable(std::move(values), cosets), U};
}

bool separates_cosets(const WreathHspInstance& instance) {
  if (!instance.true_subgroup) return false;
  const auto& f = instance.oracle.table();
  if (f.size() != w_order(instance.n)) return false;
  std::unordered_map<std::uint32_t, std::int64_t> rep_to_value;
  std::unordered_map<std::int64_t, std::uint32_t> value_to_rep;
  for (std::uint32_t i = 0; i < w_order(instance.n); ++i) {
    const std::uint32_t rep = coset_label(*instance.true_subgroup, w_from_index(instance.n, i));
    const std::int64_t v = f[i];
    if (rep_to_value.emplace(rep, v).first->second != v) return false;
    if (value_to_rep.emplace(v, rep).first->second != rep) return false;
  }
  return true;
}

WreathHspResult solve_wn_hsp(WreathHspInstance& instance, Rng& rng, int max_batches) {
  const int n = instance.n;
  check_instance(n, instance.oracle);
  if (max_batches < 1) throw Error(ErrorCode::kInvalidParams, "max_batches must be >= 1");
  OracleTable& f = instance.oracle;
  const std::int64_t start = f.evaluations();
  const auto dim = static_cast<std::int64_t>(w_order(n));
  const std::uint64_t base_qubits = (std::uint64_t{1} << (2 * n)) - 1;
  const std::uint64_t all_qubits = (std::uint64_t{1} << (2 * n + 1)) - 1;

  F2Matrix labelled{2 * n, {}};
  F2Matrix full{2 * n + 1, {}};
  std::optional<std::int64_t> f0;
  WreathSubgroup candidate = w_closure(n, {});
  bool certified = false;
  std::int64_t rounds = 0;
  std::int64_t batches = 0;

  while (batches < max_batches && !certified) {
    ++batches;
    for (int it = 0; it < 4 * n; ++it, ++rounds) {
      QuantumState state = apply_oracle(uniform_superposition(dim, f.value_dim()), f);
      auto [z, collapsed] = measure_value_register(state, rng);
      const QuantumState coset = discard_value_register(collapsed, z);
      if (rounds % 2 == 0) {
        const auto idx = static_cast<BitVector>(
            measure_group_register(hadamard_on_qubits(coset, base_qubits), rng));
        const BitVector y = idx & base_qubits;
        labelled.rows.push_back((idx >> (2 * n)) ? swap_halves(y, n) : y);
      } else {
        full.rows.push_back(static_cast<BitVector>(
            measure_group_register(hadamard_on_qubits(coset, all_qubits), rng)));
      }
    }

    // C_N always contains U n N and C_I always contains U n U'; both are
    // subspaces of F_2^{2n+1} in the index encoding.
    std::vector<WreathElement> base_gens;
    for (BitVector v : f2_nullspace(labelled)) {
      base_gens.push_back(w_from_index(n, static_cast<std::uint32_t>(v)));
    }
    std::vector<WreathElement> meet_gens;
    std::optional<WreathElement> outside;
    for (BitVector v : f2_nullspace(full)) {
      meet_gens.push_back(w_from_index(n, static_cast<std::uint32_t>(v)));
      if (!outside && meet_gens.back().t) outside = meet_gens.back();
    }
    if (!f0) f0 = f.evaluate(0);
    auto in_u = [&](const WreathElement& g) { return f.evaluate(w_index(g)) == *f0; };
    auto all_in_u = [&](const std::vector<WreathElement>& gens) {
      return std::all_of(gens.begin(), gens.end(), in_u);
    };

    // If U leaves N then U = U', so C_I contains U; a C_I inside U that has
    // an element outside N is therefore U. Otherwise a certified C_N is
    // U n N, and U is either C_N (C_I inside N forces U inside N) or
    // C_N extended by a certified element outside N.
    const WreathSubgroup meet = w_closure(n, meet_gens);
    const WreathSubgroup base = w_closure(n, base_gens);
    if (outside && all_in_u(meet.generators())) {
      candidate = meet;
      certified = true;
    } else if (all_in_u(base.generators())) {
      if (!outside) {
        candidate = base;
        certified = true;
      } else if (in_u(*outside)) {
        base_gens.push_back(*outside);
        candidate = w_closure(n, base_gens);
        certified = true;
      } else {
        candidate = base;
      }
    } else {
      candidate = base;
    }
  }

  if (certified && f.value_dim() * candidate.order() != dim) {
    throw Error(ErrorCode::kInconsistentSamples,
                "certified subgroup of order " + std::to_string(candidate.order()) +
                    " does not match " + std::to_string(f.value_dim()) + " oracle values");
  }

  SolverReport report;
  for (const auto& g : candidate.generators()) {
    report.recovered_generators.push_back(to_string(g));
  }
  report.oracle_evaluations = f.evaluations() - start;
  report.rounds = rounds;
  report.budget_exceeded = !certified;
  report.success =
      certified && (!instance.true_subgroup || *instance.true_subgroup == candidate);
  return WreathHspResult{std::move(candidate), std::move(report), batches};
}

WreathSubgroup brute_force_hsp(int n, OracleTable& oracle) {
  check_instance(n, oracle);
  std::vector<std::int64_t> values(w_order(n));
  for (std::uint32_t i = 0; i < w_order(n); ++i) values[i] = oracle.evaluate(i);
  std::vector<WreathElement> members;
  for (std::uint32_t i = 0; i < w_order(n); ++i) {
    if (values[i] == values[0]) members.push_back(w_from_index(n, i));
  }
  return w_closure(n, members);
}

}  // namespace qgroup
