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

// Builder for abelian groups given by a carrier set and (optionally) user
// supplied group-law callbacks. The result is normalized into invariant
// factor form; the structure is computed eagerly or on first structural
// query depending on the descriptor.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qgroup/groups.hpp"
#include "qgroup/rng.hpp"

namespace qgroup {

// Elements of the carrier U are the indices 0 .. domain_size-1.
using Carrier = std::int64_t;

inline constexpr std::int64_t kMaxGenericDomain = std::int64_t{1} << 20;

struct GenericGroupDescriptor {
  std::int64_t domain_size = 0;

  // Group law. If none is set, U is treated as Z_{domain_size}. Setting one
  // requires setting all three.
  std::function<Carrier(std::int64_t domain_size)> id_intrinsic;
  std::function<Carrier(Carrier, Carrier)> add_intrinsic;
  // Binary: inverse_intrinsic(a, b) is a composed with the inverse of b, so
  // the unary inverse is inverse_intrinsic(identity, b).
  std::function<Carrier(Carrier, Carrier)> inverse_intrinsic;

  // Represent elements by their coordinates over the computed generators.
  // Forces the structure computation at creation.
  bool use_representation = false;
  std::optional<std::int64_t> order;
  std::optional<std::vector<Carrier>> user_generators;
  // G is a proper subset of U.
  bool proper_subset = false;
  std::function<Carrier(std::int64_t domain_size, Rng&)> random_intrinsic;
  bool compute_structure = false;

  // Seed for the random draws used to find generators of a proper subset.
  std::uint64_t seed = 0x5eed;
};

class GenericGroup {
 public:
  std::int64_t domain_size() const { return desc_->domain_size; }

  Carrier identity() const;
  Carrier compose(Carrier a, Carrier b) const;
  Carrier inverse(Carrier a) const;
  Carrier random(Rng& rng) const;

  // The declared order when given, otherwise the computed one.
  std::int64_t order() const;

  bool structure_computed() const { return state_->ready.load(std::memory_order_acquire); }
  // Invariant factors; empty for the trivial group.
  const std::vector<std::int64_t>& invariant_factors() const;
  // Throws InvalidGroup for the trivial group, which has no factor form.
  AbelianGroup structure() const;
  // Generators picked up while computing the structure.
  const std::vector<Carrier>& generators() const;

  bool contains(Carrier x) const;
  GroupElement representation(Carrier x) const;
  Carrier from_representation(const GroupElement& g) const;
  std::int64_t element_order(Carrier x) const;

 private:
  struct State {
    std::once_flag once;
    std::atomic<bool> ready{false};
    std::vector<std::int64_t> factors;
    std::vector<Carrier> generators;
    std::unordered_map<Carrier, GroupElement> coords;
    std::unordered_map<std::int64_t, Carrier> by_index;
  };

  explicit GenericGroup(GenericGroupDescriptor desc);
  friend GenericGroup build_generic_group(GenericGroupDescriptor desc);

  const State& computed() const;
  void compute(State& state) const;
  std::vector<Carrier> draw_candidates() const;

  std::shared_ptr<const GenericGroupDescriptor> desc_;
  std::shared_ptr<State> state_;
};

// Validates the parameter co-dependencies and returns the group. Errors:
// MissingIntrinsics, UnderspecifiedSubset, MissingRandom, InvalidDescriptor.
GenericGroup build_generic_group(GenericGroupDescriptor desc);

}  // namespace qgroup
