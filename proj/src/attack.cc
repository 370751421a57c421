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
#include <set>

#include "qgroup/error.hpp"
#include "qgroup/hsp.hpp"
#include "qgroup/qep.hpp"

namespace qgroup {
namespace {

constexpr std::int64_t kGuessWindow = 4;
constexpr std::int64_t kMaxEnumeratedGroup = std::int64_t{1} << 16;

struct Search {
  const AttackSetup& setup;
  std::int64_t tried = 0;
  bool exceeded = false;
  std::optional<Bytes> accepted;
};

Subgroup closure_of(const AbelianGroup& G, const std::vector<GroupElement>& xs) {
  Subgroup H = trivial_subgroup(G);
  std::vector<GroupElement> gens;
  for (const auto& x : xs) {
    if (H.contains(x)) continue;
    gens.push_back(x);
    H = make_subgroup(G, gens);
  }
  return H;
}

std::int64_t members_in(const CiphertextFrame& frame, const Subgroup& K) {
  return std::count_if(frame.elements.begin(), frame.elements.end(),
                       [&](const GroupElement& x) { return K.contains(x); });
}

// Tries every generator of K as the key generator. Eve accepts the first
// decoding that passes the range check and matches the known prefix.
bool search_generators(const CiphertextFrame& frame, const Subgroup& K, Search& s) {
  if (K.order() < 2 || K.structure().size() != 1) return false;
  if (static_cast<std::uint64_t>(members_in(frame, K)) !=
      digit_count(K.order(), frame.plaintext_length)) {
    return false;
  }
  const auto& prefix = s.setup.known_prefix;
  for (const auto& h : K.elements()) {
    if (element_order(frame.group, h) != K.order()) continue;
    if (s.tried >= s.setup.budget) {
      s.exceeded = true;
      return false;
    }
    ++s.tried;
    Bytes candidate;
    try {
      candidate = decode_with_generator(frame, h);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLengthMismatch || e.code() == ErrorCode::kDigitRange) {
        continue;
      }
      throw;
    }
    if (candidate.size() >= prefix.size() &&
        std::equal(prefix.begin(), prefix.end(), candidate.begin())) {
      s.accepted = std::move(candidate);
      return true;
    }
  }
  return false;
}

// Cyclic subgroups whose share of the frame is consistent with carrying the
// plaintext, best statistical fit (members per subgroup element) first.
std::vector<Subgroup> cyclic_candidates(const CiphertextFrame& frame, Rng& rng) {
  const AbelianGroup& G = frame.group;
  if (G.order() > kMaxEnumeratedGroup) {
    throw Error(ErrorCode::kTooLarge, "candidate enumeration limited to |G| <= 65536");
  }
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::pair<double, Subgroup>> scored;
  for (std::int64_t i = 1; i < G.order(); ++i) {
    Subgroup C = make_subgroup(G, {element_at(G, i)});
    const auto& B = C.basis();
    if (!seen.insert(std::vector<std::int64_t>(B.data(), B.data() + B.size())).second) continue;
    const std::int64_t m = members_in(frame, C);
    if (static_cast<std::uint64_t>(m) != digit_count(C.order(), frame.plaintext_length)) {
      continue;
    }
    scored.emplace_back(static_cast<double>(m) / static_cast<double>(C.order()), std::move(C));
  }
  for (std::size_t i = scored.size(); i > 1; --i) {
    std::swap(scored[i - 1], scored[static_cast<std::size_t>(rng.uniform(i))]);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Subgroup> out;
  for (auto& [score, C] : scored) out.push_back(std::move(C));
  return out;
}

// Level none on a frame whose group is taken as given.
std::optional<Subgroup> attack_blind(const CiphertextFrame& frame, Search& s,
                                     AttackReport& report, Rng& rng) {
  const Subgroup closure = closure_of(frame.group, frame.elements);
  ++report.candidate_subgroups;
  if (search_generators(frame, closure, s)) return closure;
  for (const auto& C : cyclic_candidates(frame, rng)) {
    if (s.exceeded) break;
    if (C == closure) continue;
    ++report.candidate_subgroups;
    if (search_generators(frame, C, s)) return C;
  }
  return closure;
}

// Invariant-factor guesses n_j in [m_j, m_j + window) where m_j exceeds every
// observed coordinate.
std::vector<AbelianGroup> guess_groups(const CiphertextFrame& frame) {
  const std::size_t k = frame.group.rank();
  std::vector<std::int64_t> low(k, 2);
  for (const auto& x : frame.elements) {
    for (std::size_t j = 0; j < k; ++j) low[j] = std::max(low[j], x.coords[j] + 1);
  }
  std::vector<AbelianGroup> out;
  std::vector<std::int64_t> offset(k, 0);
  while (true) {
    std::vector<std::int64_t> factors(k);
    std::int64_t order = 1;
    for (std::size_t j = 0; j < k; ++j) {
      factors[j] = low[j] + offset[j];
      order *= factors[j];
    }
    if (order >= 4 && order <= kMaxEnumeratedGroup) out.emplace_back(factors);
    std::size_t j = 0;
    while (j < k && ++offset[j] == kGuessWindow) offset[j++] = 0;
    if (j == k) break;
  }
  return out;
}

}  // namespace

AttackReport eve_attack(const CiphertextFrame& frame, const AttackSetup& setup, Rng& rng) {
  AttackReport report;
  report.level = setup.level;
  Search s{setup, 0, false, std::nullopt};
  if (setup.level != OracleLevel::kNone && !setup.true_subgroup) {
    throw Error(ErrorCode::kInvalidParams, "oracle levels need the hidden subgroup");
  }

  std::optional<Subgroup> recovered;
  switch (setup.level) {
    case OracleLevel::kNone: {
      if (!setup.header_suppressed) {
        recovered = attack_blind(frame, s, report, rng);
        break;
      }
      for (const AbelianGroup& guess : guess_groups(frame)) {
        if (s.exceeded) break;
        const CiphertextFrame view{guess, frame.plaintext_length, frame.elements};
        auto found = attack_blind(view, s, report, rng);
        if (s.accepted) {
          recovered = std::move(found);
          break;
        }
      }
      break;
    }
    case OracleLevel::kMembership: {
      std::vector<GroupElement> kept;
      for (const auto& x : frame.elements) {
        ++report.oracle_evaluations;
        if (setup.true_subgroup->contains(x)) kept.push_back(x);
      }
      recovered = closure_of(frame.group, kept);
      ++report.candidate_subgroups;
      search_generators(frame, *recovered, s);
      break;
    }
    case OracleLevel::kCosetSeparating: {
      AbelianHspInstance instance = make_abelian_instance(*setup.true_subgroup);
      auto result = solve_abelian_hsp(instance, rng);
      report.oracle_evaluations = result.report.oracle_evaluations;
      recovered = std::move(result.recovered);
      ++report.candidate_subgroups;
      search_generators(frame, *recovered, s);
      break;
    }
  }

  report.recovered_subgroup = std::move(recovered);
  report.subgroup_correct = report.recovered_subgroup && setup.true_subgroup &&
                            *report.recovered_subgroup == *setup.true_subgroup;
  report.generators_tried = s.tried;
  report.budget_exceeded = s.exceeded;
  report.decoded_plaintext = std::move(s.accepted);
  report.success = report.decoded_plaintext && setup.true_plaintext &&
                   *report.decoded_plaintext == *setup.true_plaintext;
  return report;
}

}  // namespace qgroup
