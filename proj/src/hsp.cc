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

#include <unordered_map>

#include "qgroup/error.hpp"
#include "qgroup/hsp.hpp"

namespace qgroup {
namespace {

// rho_y is trivial on g, exactly.
bool annihilates(const AbelianGroup& G, const std::vector<std::int64_t>& y,
                 const GroupElement& g) {
  const std::int64_t e = G.exponent();
  __int128 acc = 0;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    acc += static_cast<__int128>(y[j]) * g.coords[j] * (e / G.factor(j));
    acc %= e;
  }
  return acc == 0;
}

// Non-identity rows of the Hermite basis, reduced into G.
std::vector<GroupElement> basis_elements(const Subgroup& K) {
  const AbelianGroup& G = K.parent();
  std::vector<GroupElement> out;
  for (Eigen::Index i = 0; i < K.basis().rows(); ++i) {
    GroupElement g{std::vector<std::int64_t>(G.rank())};
    bool zero = true;
    for (std::size_t j = 0; j < G.rank(); ++j) {
      const std::int64_t n = G.factor(j);
      g.coords[j] = ((K.basis()(i, static_cast<Eigen::Index>(j)) % n) + n) % n;
      zero = zero && g.coords[j] == 0;
    }
    if (!zero) out.push_back(std::move(g));
  }
  return out;
}

Subgroup subgroup_of(const AbelianGroup& G, const std::vector<GroupElement>& members) {
  Subgroup H = trivial_subgroup(G);
  std::vector<GroupElement> gens;
  for (const auto& g : members) {
    if (H.contains(g)) continue;
    gens.push_back(g);
    H = make_subgroup(G, gens);
  }
  return H;
}

}  // namespace

AbelianHspInstance make_abelian_instance(const Subgroup& H) {
  const AbelianGroup& G = H.parent();
  std::vector<std::int64_t> values(static_cast<std::size_t>(G.order()));
  std::unordered_map<std::int64_t, std::int64_t> label;
  for (std::int64_t i = 0; i < G.order(); ++i) {
    const std::int64_t rep = index_of(G, H.canonical_coset_rep(element_at(G, i)));
    const auto next = static_cast<std::int64_t>(label.size());
    values[static_cast<std::size_t>(i)] = label.emplace(rep, next).first->second;
  }
  const auto cosets = static_cast<std::int64_t>(label.size());
  return AbelianHspInstance{G, OracleTable(std::move(values), cosets), H};
}

bool separates_cosets(const AbelianHspInstance& instance) {
  if (!instance.true_subgroup) return false;
  const AbelianGroup& G = instance.group;
  const Subgroup& H = *instance.true_subgroup;
  const auto& f = instance.oracle.table();
  if (static_cast<std::int64_t>(f.size()) != G.order()) return false;
  std::unordered_map<std::int64_t, std::int64_t> rep_to_value;
  std::unordered_map<std::int64_t, std::int64_t> value_to_rep;
  for (std::int64_t i = 0; i < G.order(); ++i) {
    const std::int64_t rep = index_of(G, H.canonical_coset_rep(element_at(G, i)));
    const std::int64_t v = f[static_cast<std::size_t>(i)];
    if (rep_to_value.emplace(rep, v).first->second != v) return false;
    if (value_to_rep.emplace(v, rep).first->second != rep) return false;
  }
  return true;
}

Character sample_character(AbelianHspInstance& instance, Rng& rng) {
  const AbelianGroup& G = instance.group;
  QuantumState state = uniform_superposition(G, instance.oracle.value_dim());
  state = apply_oracle(state, instance.oracle);
  auto [z, collapsed] = measure_value_register(state, rng);
  const QuantumState fourier = qft_abelian(discard_value_register(collapsed, z), G);
  return character_from(element_at(G, measure_group_register(fourier, rng)));
}

Subgroup kernel_of_characters(const AbelianGroup& G, const std::vector<Character>& chars) {
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(chars.size());
  for (const auto& c : chars) rows.push_back(c.exponents);
  return solve_character_congruences(G, rows);
}

AbelianHspResult solve_abelian_hsp(AbelianHspInstance& instance, Rng& rng,
                                   std::int64_t max_rounds) {
  if (max_rounds < 1) throw Error(ErrorCode::kInvalidParams, "max_rounds must be >= 1");
  const AbelianGroup& G = instance.group;
  const std::int64_t start = instance.oracle.evaluations();
  std::vector<Character> chars;
  Subgroup K = whole_group(G);
  std::vector<GroupElement> basis = basis_elements(K);
  std::optional<std::int64_t> f0;
  int stable = 0;
  bool certified = false;
  std::int64_t rounds = 0;
  while (rounds < max_rounds) {
    const Character rho = sample_character(instance, rng);
    ++rounds;
    bool shrinks = false;
    for (const auto& b : basis) {
      if (!annihilates(G, rho.exponents, b)) {
        shrinks = true;
        break;
      }
    }
    if (shrinks) {
      chars.push_back(rho);
      K = kernel_of_characters(G, chars);
      basis = basis_elements(K);
      stable = 0;
      continue;
    }
    if (++stable < kStableRounds) continue;
    if (!f0) f0 = instance.oracle.evaluate(0);
    certified = true;
    for (const auto& b : basis) {
      if (instance.oracle.evaluate(index_of(G, b)) != *f0) {
        certified = false;
        break;
      }
    }
    if (certified) break;
    stable = 0;
  }

  SolverReport report;
  for (const auto& b : basis) report.recovered_generators.push_back(to_string(b));
  report.oracle_evaluations = instance.oracle.evaluations() - start;
  report.rounds = rounds;
  report.budget_exceeded = !certified;
  report.success =
      certified && (!instance.true_subgroup || *instance.true_subgroup == K);
  return AbelianHspResult{std::move(K), std::move(report)};
}

Subgroup brute_force_hsp(const AbelianGroup& G, OracleTable& oracle) {
  if (G.order() > kMaxBruteForce) {
    throw Error(ErrorCode::kTooLarge, "exhaustive search is limited to |G| <= 512");
  }
  if (oracle.group_dim() != G.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle does not match the group");
  }
  std::vector<std::int64_t> values(static_cast<std::size_t>(G.order()));
  for (std::int64_t i = 0; i < G.order(); ++i) {
    values[static_cast<std::size_t>(i)] = oracle.evaluate(i);
  }
  std::vector<GroupElement> members;
  for (std::int64_t i = 0; i < G.order(); ++i) {
    if (values[static_cast<std::size_t>(i)] == values[0]) members.push_back(element_at(G, i));
  }
  return subgroup_of(G, members);
}

}  // namespace qgroup
