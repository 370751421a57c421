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

// Finite abelian groups in invariant-factor form Z_{n_1} x ... x Z_{n_k},
// their subgroups, characters and discrete logarithms.

#pragma once

#include <atomic>
#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qgroup/error.hpp"
#include "qgroup/integer_matrix.hpp"
#include "qgroup/rng.hpp"

namespace qgroup {

inline constexpr std::int64_t kMaxGroupOrder = std::int64_t{1} << 40;

class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::int64_t> invariant_factors);

  // Comma-separated factors, e.g. "8,4,2".
  static AbelianGroup parse(std::string_view text);
  std::string to_string() const;

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t factor(std::size_t j) const { return factors_[j]; }
  std::int64_t order() const { return order_; }
  // Least common multiple of the factors.
  std::int64_t exponent() const { return exponent_; }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
  std::int64_t exponent_ = 1;
};

struct GroupElement {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& g);

// Group law. All arithmetic is coordinate-wise modular.
GroupElement identity(const AbelianGroup& G);
GroupElement compose(const AbelianGroup& G, const GroupElement& a,
                     const GroupElement& b);
GroupElement inverse(const AbelianGroup& G, const GroupElement& a);
// m * a, m may be negative.
GroupElement multiply(const AbelianGroup& G, std::int64_t m, const GroupElement& a);
std::int64_t element_order(const AbelianGroup& G, const GroupElement& a);

// Reduces an integer sequence mod n_j. Throws UnliftableTerm on a wrong
// coordinate count.
GroupElement lift(const AbelianGroup& G, const std::vector<std::int64_t>& values);
void check_member(const AbelianGroup& G, const GroupElement& a);

// Mixed-radix index, first coordinate most significant, so index order is
// lexicographic order.
std::int64_t index_of(const AbelianGroup& G, const GroupElement& a);
GroupElement element_at(const AbelianGroup& G, std::int64_t index);

GroupElement random_element(const AbelianGroup& G, Rng& rng);

// rho_y(g) = exp(2 pi i sum_j y_j g_j / n_j). The dual group is identified
// with G itself through the exponent vector y.
struct Character {
  std::vector<std::int64_t> exponents;

  friend bool operator==(const Character&, const Character&) = default;
};

std::complex<double> evaluate(const AbelianGroup& G, const Character& rho,
                              const GroupElement& g);
Character character_from(const GroupElement& exponents);

enum class StructurePolicy { kEager, kLazy };

class Subgroup {
 public:
  const AbelianGroup& parent() const { return parent_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  // Upper-triangular Hermite basis of the lattice spanned by the generator
  // coordinate vectors together with n_j e_j.
  const Matrix<std::int64_t>& basis() const { return basis_; }
  std::int64_t order() const { return order_; }
  std::int64_t index() const { return parent_.order() / order_; }

  // Invariant factors of the subgroup itself (empty for the trivial group).
  // Computed on first use and cached.
  const std::vector<std::int64_t>& structure() const;
  bool structure_computed() const;

  bool contains(const GroupElement& g) const;
  // Lexicographically smallest element of the coset g + H.
  GroupElement canonical_coset_rep(const GroupElement& g) const;
  // All elements, sorted.
  std::vector<GroupElement> elements() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.basis_ == b.basis_;
  }

 private:
  struct StructureCache {
    std::once_flag once;
    std::vector<std::int64_t> factors;
    std::atomic<bool> ready{false};
  };

  Subgroup(AbelianGroup parent, std::vector<GroupElement> generators);

  friend Subgroup make_subgroup(const AbelianGroup& G,
                                std::vector<GroupElement> generators,
                                StructurePolicy policy);

  AbelianGroup parent_;
  std::vector<GroupElement> generators_;
  Matrix<std::int64_t> basis_;
  std::int64_t order_ = 1;
  std::shared_ptr<StructureCache> cache_;
};

Subgroup make_subgroup(const AbelianGroup& G, std::vector<GroupElement> generators,
                       StructurePolicy policy = StructurePolicy::kLazy);
Subgroup whole_group(const AbelianGroup& G);
Subgroup trivial_subgroup(const AbelianGroup& G);

// One entry of a generator list: an element of G, an integer sequence to be
// reduced into G, or a nested list of further terms.
class GeneratorTerm {
 public:
  static GeneratorTerm element(GroupElement g) { return GeneratorTerm(std::move(g)); }
  static GeneratorTerm integers(std::vector<std::int64_t> v) {
    return GeneratorTerm(std::move(v));
  }
  static GeneratorTerm nested(std::vector<GeneratorTerm> terms) {
    return GeneratorTerm(std::move(terms));
  }

  using Value = std::variant<GroupElement, std::vector<std::int64_t>,
                             std::vector<GeneratorTerm>>;
  const Value& value() const { return value_; }

 private:
  explicit GeneratorTerm(GroupElement g) : value_(std::move(g)) {}
  explicit GeneratorTerm(std::vector<std::int64_t> v) : value_(std::move(v)) {}
  explicit GeneratorTerm(std::vector<GeneratorTerm> t) : value_(std::move(t)) {}

  Value value_;
};

// The group structure of G is always known here, so the subgroup structure is
// computed at creation unless the caller asks for lazy evaluation.
Subgroup subgroup_from_generators(const AbelianGroup& G,
                                  const std::vector<GeneratorTerm>& terms,
                                  StructurePolicy policy = StructurePolicy::kEager);

// Invariant factors of <gens>, largest first, via the Smith form of its
// relation lattice.
std::vector<std::int64_t> compute_structure(const AbelianGroup& G,
                                            const std::vector<GroupElement>& gens);

Subgroup sylow_subgroup(const AbelianGroup& G, std::int64_t p);

inline bool contains(const Subgroup& H, const GroupElement& g) {
  return H.contains(g);
}
inline GroupElement canonical_coset_rep(const Subgroup& H, const GroupElement& g) {
  return H.canonical_coset_rep(g);
}

// {x in G : sum_j y_j x_j / n_j in Z for every y in rows}. Shared by the
// annihilator and the kernel of a set of characters, which are the same
// congruence system read in the two directions of the pairing.
Subgroup solve_character_congruences(const AbelianGroup& G,
                                     const std::vector<std::vector<std::int64_t>>& rows);

// H^perp as a subgroup of the dual group (identified with G).
Subgroup annihilator(const Subgroup& H);

// Baby-step giant-step table for one base element.
class DiscreteLog {
 public:
  DiscreteLog(const AbelianGroup& G, const GroupElement& base);

  std::int64_t base_order() const { return order_; }
  // Smallest m >= 0 with m * base = target, if any.
  std::optional<std::int64_t> log(const GroupElement& target) const;

 private:
  AbelianGroup group_;
  GroupElement base_;
  std::int64_t order_ = 1;
  std::int64_t baby_ = 1;
  std::unordered_map<std::int64_t, std::int64_t> table_;
  GroupElement giant_;
};

std::int64_t discrete_log(const AbelianGroup& G, const GroupElement& base,
                          const GroupElement& target);

bool is_prime(std::int64_t p);

}  // namespace qgroup
