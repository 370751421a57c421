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

#include "qgroup/generic_group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgroup {

GenericGroup::GenericGroup(GenericGroupDescriptor desc)
    : desc_(std::make_shared<const GenericGroupDescriptor>(std::move(desc))),
      state_(std::make_shared<State>()) {}

GenericGroup build_generic_group(GenericGroupDescriptor desc) {
  if (desc.domain_size < 1 || desc.domain_size > kMaxGenericDomain) {
    throw Error(ErrorCode::kInvalidDescriptor,
                "domain size must be in [1, 2^20]");
  }
  const int intrinsics = (desc.id_intrinsic ? 1 : 0) + (desc.add_intrinsic ? 1 : 0) +
                         (desc.inverse_intrinsic ? 1 : 0);
  if (intrinsics != 0 && intrinsics != 3) {
    throw Error(ErrorCode::kMissingIntrinsics,
                "identity, composition and inverse must be given together");
  }
  if (desc.proper_subset && !desc.order && !desc.user_generators) {
    throw Error(ErrorCode::kUnderspecifiedSubset,
                "a proper subset needs an order or user generators");
  }
  if (desc.proper_subset && !desc.random_intrinsic && !desc.user_generators) {
    throw Error(ErrorCode::kMissingRandom,
                "a proper subset needs a random function or user generators");
  }
  if (desc.order && (*desc.order < 1 || *desc.order > desc.domain_size)) {
    throw Error(ErrorCode::kInvalidDescriptor, "order outside [1, domain size]");
  }
  if (desc.user_generators) {
    for (Carrier g : *desc.user_generators) {
      if (g < 0 || g >= desc.domain_size) {
        throw Error(ErrorCode::kInvalidDescriptor,
                    "generator " + std::to_string(g) + " outside the domain");
      }
    }
  }
  const bool eager = desc.compute_structure || desc.use_representation;
  GenericGroup G(std::move(desc));
  if (eager) G.computed();
  return G;
}

Carrier GenericGroup::identity() const {
  return desc_->id_intrinsic ? desc_->id_intrinsic(desc_->domain_size) : 0;
}

Carrier GenericGroup::compose(Carrier a, Carrier b) const {
  if (desc_->add_intrinsic) return desc_->add_intrinsic(a, b);
  return (a + b) % desc_->domain_size;
}

Carrier GenericGroup::inverse(Carrier a) const {
  if (desc_->inverse_intrinsic) return desc_->inverse_intrinsic(identity(), a);
  return (desc_->domain_size - a) % desc_->domain_size;
}

Carrier GenericGroup::random(Rng& rng) const {
  if (desc_->random_intrinsic) return desc_->random_intrinsic(desc_->domain_size, rng);
  if (!desc_->proper_subset) {
    return static_cast<Carrier>(rng.uniform(static_cast<std::uint64_t>(desc_->domain_size)));
  }
  const AbelianGroup G = structure();
  return from_representation(random_element(G, rng));
}

std::int64_t GenericGroup::order() const {
  if (desc_->order) return *desc_->order;
  const auto& factors = invariant_factors();
  return std::accumulate(factors.begin(), factors.end(), std::int64_t{1},
                         std::multiplies<>());
}

const std::vector<std::int64_t>& GenericGroup::invariant_factors() const {
  return computed().factors;
}

AbelianGroup GenericGroup::structure() const {
  const auto& factors = invariant_factors();
  if (factors.empty()) throw Error(ErrorCode::kInvalidGroup, "trivial group");
  return AbelianGroup(factors);
}

const std::vector<Carrier>& GenericGroup::generators() const {
  return computed().generators;
}

bool GenericGroup::contains(Carrier x) const { return computed().coords.count(x) > 0; }

GroupElement GenericGroup::representation(Carrier x) const {
  const auto& state = computed();
  auto it = state.coords.find(x);
  if (it == state.coords.end()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(x) + " is not an element of the group");
  }
  return it->second;
}

Carrier GenericGroup::from_representation(const GroupElement& g) const {
  const AbelianGroup G = structure();
  check_member(G, g);
  return computed().by_index.at(index_of(G, g));
}

std::int64_t GenericGroup::element_order(Carrier x) const {
  const auto& factors = invariant_factors();
  if (factors.empty()) return 1;
  return qgroup::element_order(AbelianGroup(factors), representation(x));
}

const GenericGroup::State& GenericGroup::computed() const {
  std::call_once(state_->once, [this] {
    compute(*state_);
    state_->ready.store(true, std::memory_order_release);
  });
  return *state_;
}

std::vector<Carrier> GenericGroup::draw_candidates() const {
  if (desc_->user_generators) return *desc_->user_generators;
  std::vector<Carrier> out;
  if (desc_->proper_subset) {
    // Random elements until they generate a group of the declared order; the
    // expected number of draws is small for abelian groups, cap generously.
    Rng rng(desc_->seed);
    const std::int64_t draws = 64 + 4 * static_cast<std::int64_t>(
                                        std::log2(static_cast<double>(*desc_->order) + 1));
    for (std::int64_t i = 0; i < draws; ++i) {
      out.push_back(desc_->random_intrinsic(desc_->domain_size, rng));
    }
    return out;
  }
  out.resize(static_cast<std::size_t>(desc_->domain_size));
  std::iota(out.begin(), out.end(), Carrier{0});
  return out;
}

void GenericGroup::compute(State& state) const {
  const std::int64_t limit = desc_->domain_size;
  const Carrier e = identity();
  // Exponent vectors over the generators accepted so far.
  std::unordered_map<Carrier, std::vector<std::int64_t>> members{{e, {}}};
  std::vector<std::vector<std::int64_t>> relations;

  for (Carrier g : draw_candidates()) {
    if (desc_->order && static_cast<std::int64_t>(members.size()) == *desc_->order &&
        !desc_->user_generators) {
      break;
    }
    if (members.count(g)) continue;
    const std::size_t m = state.generators.size();
    // Smallest r with r*g already in the current subgroup.
    std::vector<Carrier> powers{e, g};
    while (!members.count(powers.back())) {
      if (static_cast<std::int64_t>(powers.size()) > limit + 1) {
        throw Error(ErrorCode::kInvalidDescriptor, "composition does not close");
      }
      powers.push_back(compose(powers.back(), g));
    }
    const auto r = static_cast<std::int64_t>(powers.size()) - 1;
    std::vector<std::int64_t> relation = members.at(powers.back());
    for (auto& c : relation) c = -c;
    relation.push_back(r);
    relations.push_back(std::move(relation));

    std::vector<std::pair<Carrier, std::vector<std::int64_t>>> added;
    for (const auto& [x, vec] : members) {
      for (std::int64_t i = 1; i < r; ++i) {
        std::vector<std::int64_t> v = vec;
        v.resize(m, 0);
        v.push_back(i);
        added.emplace_back(compose(x, powers[static_cast<std::size_t>(i)]), std::move(v));
      }
    }
    for (auto& [x, vec] : members) vec.resize(m + 1, 0);
    for (auto& [x, vec] : added) {
      if (x < 0 || x >= limit || !members.emplace(x, std::move(vec)).second) {
        throw Error(ErrorCode::kInvalidDescriptor,
                    "group law is not associative or not closed on the domain");
      }
    }
    state.generators.push_back(g);
  }

  if (desc_->order && static_cast<std::int64_t>(members.size()) != *desc_->order) {
    throw Error(ErrorCode::kInconsistentDescriptor,
                "declared order " + std::to_string(*desc_->order) +
                    " but the generators give " + std::to_string(members.size()));
  }

  const auto m = static_cast<Eigen::Index>(state.generators.size());
  if (m == 0) {
    state.coords.emplace(e, GroupElement{});
    return;
  }
  IntegerMatrix R = IntegerMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& rel = relations[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(rel.size()); ++j) {
      R(i, j) = Integer(rel[static_cast<std::size_t>(j)]);
    }
  }
  // Elements are Z^m / rowspace(R); x -> x V maps that onto Z^m / rowspace(D).
  const auto snf = smith_normal_form(R);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (snf.D(i, i) > Integer(1)) {
      kept.push_back(i);
      state.factors.push_back(snf.D(i, i).to_int64());
    }
  }
  if (state.factors.empty()) {
    state.coords.emplace(e, GroupElement{});
    return;
  }
  // Largest factor first.
  std::reverse(kept.begin(), kept.end());
  std::reverse(state.factors.begin(), state.factors.end());
  const AbelianGroup G(state.factors);
  for (const auto& [x, vec] : members) {
    GroupElement coords{std::vector<std::int64_t>(kept.size())};
    for (std::size_t t = 0; t < kept.size(); ++t) {
      Integer acc(0);
      for (Eigen::Index i = 0; i < m; ++i) {
        acc += Integer(vec[static_cast<std::size_t>(i)]) * snf.V(i, kept[t]);
      }
      Integer r = acc % Integer(G.factor(t));
      if (r < Integer(0)) r += Integer(G.factor(t));
      coords.coords[t] = r.to_int64();
    }
    state.by_index.emplace(index_of(G, coords), x);
    state.coords.emplace(x, std::move(coords));
  }
}

}  // namespace qgroup
