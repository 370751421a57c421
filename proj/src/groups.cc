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

#include "qgroup/groups.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qgroup {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<__int128>(mod(a, n)) * mod(b, n)) % n);
}

void require_same_rank(const AbelianGroup& G, const GroupElement& a) {
  if (a.coords.size() != G.rank()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "element has " + std::to_string(a.coords.size()) +
                    " coordinates, group has " + std::to_string(G.rank()));
  }
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  if (factors_.empty()) {
    throw Error(ErrorCode::kInvalidGroup, "at least one factor is required");
  }
  for (std::int64_t n : factors_) {
    if (n < 2) {
      throw Error(ErrorCode::kInvalidGroup,
                  "invariant factor " + std::to_string(n) + " is below 2");
    }
    if (order_ > kMaxGroupOrder / n) {
      throw Error(ErrorCode::kTooLarge, "group order exceeds 2^40");
    }
    order_ *= n;
    exponent_ = std::lcm(exponent_, n);
  }
}

AbelianGroup AbelianGroup::parse(std::string_view text) {
  std::vector<std::int64_t> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::kParse,
                  "bad group descriptor '" + std::string(text) + "'");
    }
    factors.push_back(v);
    pos = comma + 1;
  }
  return AbelianGroup(std::move(factors));
}

std::string AbelianGroup::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(factors_[j]);
  }
  return out;
}

std::string to_string(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t j = 0; j < g.coords.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(g.coords[j]);
  }
  return out + ")";
}

GroupElement identity(const AbelianGroup& G) {
  return GroupElement{std::vector<std::int64_t>(G.rank(), 0)};
}

GroupElement compose(const AbelianGroup& G, const GroupElement& a,
                     const GroupElement& b) {
  require_same_rank(G, a);
  require_same_rank(G, b);
  GroupElement out{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    out.coords[j] = mod(a.coords[j] + b.coords[j], G.factor(j));
  }
  return out;
}

GroupElement inverse(const AbelianGroup& G, const GroupElement& a) {
  require_same_rank(G, a);
  GroupElement out{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    out.coords[j] = mod(-a.coords[j], G.factor(j));
  }
  return out;
}

GroupElement multiply(const AbelianGroup& G, std::int64_t m, const GroupElement& a) {
  require_same_rank(G, a);
  GroupElement out{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    out.coords[j] = mul_mod(m, a.coords[j], G.factor(j));
  }
  return out;
}

std::int64_t element_order(const AbelianGroup& G, const GroupElement& a) {
  require_same_rank(G, a);
  std::int64_t order = 1;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    const std::int64_t n = G.factor(j);
    order = std::lcm(order, n / std::gcd(mod(a.coords[j], n), n));
  }
  return order;
}

GroupElement lift(const AbelianGroup& G, const std::vector<std::int64_t>& values) {
  if (values.size() != G.rank()) {
    throw Error(ErrorCode::kUnliftableTerm,
                "term has " + std::to_string(values.size()) +
                    " coordinates, group has " + std::to_string(G.rank()));
  }
  GroupElement out{values};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    out.coords[j] = mod(values[j], G.factor(j));
  }
  return out;
}

void check_member(const AbelianGroup& G, const GroupElement& a) {
  require_same_rank(G, a);
  for (std::size_t j = 0; j < G.rank(); ++j) {
    if (a.coords[j] < 0 || a.coords[j] >= G.factor(j)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "coordinate " + std::to_string(j) + " of " + to_string(a) +
                      " is not reduced");
    }
  }
}

std::int64_t index_of(const AbelianGroup& G, const GroupElement& a) {
  require_same_rank(G, a);
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    idx = idx * G.factor(j) + mod(a.coords[j], G.factor(j));
  }
  return idx;
}

GroupElement element_at(const AbelianGroup& G, std::int64_t index) {
  GroupElement out{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = G.rank(); j-- > 0;) {
    out.coords[j] = index % G.factor(j);
    index /= G.factor(j);
  }
  return out;
}

GroupElement random_element(const AbelianGroup& G, Rng& rng) {
  GroupElement out{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    out.coords[j] = static_cast<std::int64_t>(
        rng.uniform(static_cast<std::uint64_t>(G.factor(j))));
  }
  return out;
}

std::complex<double> evaluate(const AbelianGroup& G, const Character& rho,
                              const GroupElement& g) {
  if (rho.exponents.size() != G.rank()) {
    throw Error(ErrorCode::kDimensionMismatch, "character rank mismatch");
  }
  require_same_rank(G, g);
  // Accumulate the phase as an exact fraction of the exponent before
  // converting, so large groups do not drift.
  const std::int64_t e = G.exponent();
  std::int64_t num = 0;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    const std::int64_t n = G.factor(j);
    num = mod(num + mul_mod(mul_mod(rho.exponents[j], g.coords[j], n), e / n, e), e);
  }
  const double angle = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(e);
  return {std::cos(angle), std::sin(angle)};
}

Character character_from(const GroupElement& exponents) {
  return Character{exponents.coords};
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(AbelianGroup parent, std::vector<GroupElement> generators)
    : parent_(std::move(parent)),
      generators_(std::move(generators)),
      cache_(std::make_shared<StructureCache>()) {}

Subgroup make_subgroup(const AbelianGroup& G, std::vector<GroupElement> generators,
                       StructurePolicy policy) {
  for (const auto& g : generators) check_member(G, g);
  Subgroup H(G, std::move(generators));

  const auto k = static_cast<Eigen::Index>(G.rank());
  const auto m = static_cast<Eigen::Index>(H.generators_.size());
  IntegerMatrix lattice = IntegerMatrix::Zero(m + k, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      lattice(i, j) = Integer(H.generators_[i].coords[j]);
    }
  }
  for (Eigen::Index j = 0; j < k; ++j) lattice(m + j, j) = Integer(G.factor(j));

  const IntegerMatrix hnf = hermite_normal_form(lattice);
  // Full rank because n_j e_j are in the lattice; entries are reduced below
  // the pivots, which divide the n_j, so everything fits in 64 bits.
  H.basis_.resize(k, k);
  std::int64_t index = 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) H.basis_(i, j) = hnf(i, j).to_int64();
    index *= H.basis_(i, i);
  }
  H.order_ = G.order() / index;
  if (policy == StructurePolicy::kEager) H.structure();
  return H;
}

Subgroup whole_group(const AbelianGroup& G) {
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    GroupElement e = identity(G);
    e.coords[j] = 1;
    gens.push_back(std::move(e));
  }
  return make_subgroup(G, std::move(gens));
}

Subgroup trivial_subgroup(const AbelianGroup& G) { return make_subgroup(G, {}); }

const std::vector<std::int64_t>& Subgroup::structure() const {
  std::call_once(cache_->once, [this] {
    cache_->factors = compute_structure(parent_, generators_);
    cache_->ready.store(true, std::memory_order_release);
  });
  return cache_->factors;
}

bool Subgroup::structure_computed() const {
  return cache_->ready.load(std::memory_order_acquire);
}

bool Subgroup::contains(const GroupElement& g) const {
  require_same_rank(parent_, g);
  std::vector<std::int64_t> v = g.coords;
  const std::size_t k = parent_.rank();
  for (std::size_t j = 0; j < k; ++j) v[j] = mod(v[j], parent_.factor(j));
  for (std::size_t j = 0; j < k; ++j) {
    const std::int64_t d = basis_(j, j);
    if (v[j] % d != 0) return false;
    const std::int64_t q = v[j] / d;
    for (std::size_t c = j; c < k; ++c) {
      v[c] = mod(v[c] - mul_mod(q, basis_(j, c), parent_.factor(c)),
                 parent_.factor(c));
    }
  }
  return true;
}

GroupElement Subgroup::canonical_coset_rep(const GroupElement& g) const {
  require_same_rank(parent_, g);
  std::vector<std::int64_t> v = g.coords;
  const std::size_t k = parent_.rank();
  for (std::size_t j = 0; j < k; ++j) v[j] = mod(v[j], parent_.factor(j));
  for (std::size_t j = 0; j < k; ++j) {
    const std::int64_t q = v[j] / basis_(j, j);
    if (q == 0) continue;
    for (std::size_t c = j; c < k; ++c) {
      v[c] = mod(v[c] - mul_mod(q, basis_(j, c), parent_.factor(c)),
                 parent_.factor(c));
    }
  }
  return GroupElement{std::move(v)};
}

std::vector<GroupElement> Subgroup::elements() const {
  // Every element is uniquely sum_j c_j b_j with 0 <= c_j < n_j / d_j.
  const std::size_t k = parent_.rank();
  std::vector<std::int64_t> span(k);
  for (std::size_t j = 0; j < k; ++j) span[j] = parent_.factor(j) / basis_(j, j);
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  std::vector<std::int64_t> c(k, 0);
  while (true) {
    GroupElement e = identity(parent_);
    for (std::size_t j = 0; j < k; ++j) {
      if (c[j] == 0) continue;
      for (std::size_t col = j; col < k; ++col) {
        e.coords[col] = mod(e.coords[col] + mul_mod(c[j], basis_(j, col),
                                                    parent_.factor(col)),
                            parent_.factor(col));
      }
    }
    out.push_back(std::move(e));
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (++c[j] < span[j]) break;
      c[j] = 0;
      if (j == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
    if (k == 0) break;
  }
  return out;
}

namespace {

void flatten_terms(const AbelianGroup& G, const std::vector<GeneratorTerm>& terms,
                   std::vector<GroupElement>& out) {
  for (const auto& term : terms) {
    const auto& value = term.value();
    if (const auto* g = std::get_if<GroupElement>(&value)) {
      if (g->coords.size() != G.rank()) {
        throw Error(ErrorCode::kUnliftableTerm,
                    "element " + to_string(*g) + " does not lift into G");
      }
      out.push_back(lift(G, g->coords));
    } else if (const auto* ints = std::get_if<std::vector<std::int64_t>>(&value)) {
      out.push_back(lift(G, *ints));
    } else {
      flatten_terms(G, std::get<std::vector<GeneratorTerm>>(value), out);
    }
  }
}

}  // namespace

Subgroup subgroup_from_generators(const AbelianGroup& G,
                                  const std::vector<GeneratorTerm>& terms,
                                  StructurePolicy policy) {
  std::vector<GroupElement> gens;
  flatten_terms(G, terms, gens);
  return make_subgroup(G, std::move(gens), policy);
}

std::vector<std::int64_t> compute_structure(const AbelianGroup& G,
                                            const std::vector<GroupElement>& gens) {
  if (gens.empty()) return {};
  for (const auto& g : gens) require_same_rank(G, g);
  const auto k = static_cast<Eigen::Index>(G.rank());
  const auto m = static_cast<Eigen::Index>(gens.size());
  // Relations c with sum_i c_i g_i = 0 in G are the first m coordinates of
  // the integer left kernel of [gens; diag(n)].
  IntegerMatrix system = IntegerMatrix::Zero(m + k, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) system(i, j) = Integer(gens[i].coords[j]);
  }
  for (Eigen::Index j = 0; j < k; ++j) system(m + j, j) = Integer(G.factor(j));
  const IntegerMatrix relations = left_kernel(system).leftCols(m);
  const auto snf = smith_normal_form(relations);
  std::vector<std::int64_t> factors;
  for (Eigen::Index i = 0; i < std::min(snf.D.rows(), snf.D.cols()); ++i) {
    const Integer& d = snf.D(i, i);
    if (d > Integer(1)) factors.push_back(d.to_int64());
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Subgroup sylow_subgroup(const AbelianGroup& G, std::int64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  }
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    std::int64_t cofactor = G.factor(j);
    while (cofactor % p == 0) cofactor /= p;
    if (cofactor == G.factor(j)) continue;
    GroupElement e = identity(G);
    e.coords[j] = cofactor % G.factor(j);
    gens.push_back(std::move(e));
  }
  return make_subgroup(G, std::move(gens), StructurePolicy::kEager);
}

Subgroup solve_character_congruences(
    const AbelianGroup& G, const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return whole_group(G);
  const auto k = static_cast<Eigen::Index>(G.rank());
  const auto m = static_cast<Eigen::Index>(rows.size());
  const std::int64_t e = G.exponent();
  // sum_j x_j y_ij (e / n_j) - e z_i = 0 for all i; keep the x part of the
  // integer solutions.
  IntegerMatrix system = IntegerMatrix::Zero(k + m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rows[i].size() != G.rank()) {
      throw Error(ErrorCode::kDimensionMismatch, "character rank mismatch");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      system(j, i) = Integer(mod(rows[i][j], G.factor(j)) * (e / G.factor(j)));
    }
    system(k + i, i) = Integer(e);
  }
  const IntegerMatrix kernel = left_kernel(system);
  std::vector<GroupElement> gens;
  for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
    GroupElement g = identity(G);
    bool nonzero = false;
    for (Eigen::Index j = 0; j < k; ++j) {
      Integer v = kernel(r, j) % Integer(G.factor(j));
      if (v < Integer(0)) v += Integer(G.factor(j));
      g.coords[j] = v.to_int64();
      nonzero = nonzero || g.coords[j] != 0;
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  return make_subgroup(G, std::move(gens));
}

Subgroup annihilator(const Subgroup& H) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& h : H.generators()) rows.push_back(h.coords);
  return solve_character_congruences(H.parent(), rows);
}

// ---------------------------------------------------------------------------
// Discrete logarithms

DiscreteLog::DiscreteLog(const AbelianGroup& G, const GroupElement& base)
    : group_(G), base_(base), order_(element_order(G, base)) {
  check_member(G, base);
  baby_ = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(order_))));
  while (baby_ * baby_ < order_) ++baby_;
  GroupElement x = identity(G);
  for (std::int64_t j = 0; j < baby_; ++j) {
    table_.emplace(index_of(G, x), j);
    x = compose(G, x, base_);
  }
  giant_ = multiply(G, -baby_, base_);
}

std::optional<std::int64_t> DiscreteLog::log(const GroupElement& target) const {
  check_member(group_, target);
  GroupElement gamma = target;
  for (std::int64_t i = 0; i <= baby_; ++i) {
    auto it = table_.find(index_of(group_, gamma));
    if (it != table_.end()) {
      const std::int64_t m = i * baby_ + it->second;
      if (m < order_) return m;
    }
    gamma = compose(group_, gamma, giant_);
  }
  return std::nullopt;
}

std::int64_t discrete_log(const AbelianGroup& G, const GroupElement& base,
                          const GroupElement& target) {
  check_member(G, base);
  check_member(G, target);
  if (base == identity(G)) {
    if (target == base) return 0;
    throw Error(ErrorCode::kDegenerateBase, "base is the identity");
  }
  auto m = DiscreteLog(G, base).log(target);
  if (!m) {
    throw Error(ErrorCode::kNotInCyclicSubgroup,
                to_string(target) + " is not a multiple of " + to_string(base));
  }
  return *m;
}

}  // namespace qgroup
