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

// The groups W_n = Z_2^n wr Z_2 with the swap action:
//   (a, b, t) (a', b', t') = (a ^ a'', b ^ b'', t ^ t')
// where (a'', b'') = (a', b') if t = 0 and (b', a') if t = 1.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qgroup/rng.hpp"

namespace qgroup {

inline constexpr int kMaxWreathN = 4;

struct WreathElement {
  int n = 1;
  std::uint32_t a = 0;  // bit i is the i-th character of the text form
  std::uint32_t b = 0;
  bool t = false;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

WreathElement w_identity(int n);
WreathElement w_compose(const WreathElement& x, const WreathElement& y);
WreathElement w_inverse(const WreathElement& x);
inline bool is_in_base(const WreathElement& x) { return !x.t; }

// Index in [0, 2^{2n+1}): a | b << n | t << 2n. Subgroups of W_n are linear
// subspaces of F_2^{2n+1} under this encoding.
std::uint32_t w_index(const WreathElement& x);
WreathElement w_from_index(int n, std::uint32_t index);
inline std::uint32_t w_order(int n) { return std::uint32_t{1} << (2 * n + 1); }
WreathElement w_random(int n, Rng& rng);

// "10|01|1".
std::string to_string(const WreathElement& x);
WreathElement parse_wreath_element(std::string_view text);

class WreathSubgroup {
 public:
  int n() const { return n_; }
  // A minimal generating set picked greedily from the input generators.
  const std::vector<WreathElement>& generators() const { return generators_; }
  // Sorted by index.
  const std::vector<WreathElement>& elements() const { return elements_; }
  std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
  bool contains(const WreathElement& x) const;

  friend bool operator==(const WreathSubgroup& x, const WreathSubgroup& y) {
    return x.n_ == y.n_ && x.member_ == y.member_;
  }

 private:
  friend WreathSubgroup w_closure(int n, const std::vector<WreathElement>& gens);

  int n_ = 1;
  std::vector<WreathElement> generators_;
  std::vector<WreathElement> elements_;
  std::vector<bool> member_;
};

// Smallest subgroup containing gens, by breadth-first product saturation.
// Throws TooLarge for n > 4.
WreathSubgroup w_closure(int n, const std::vector<WreathElement>& gens);
// The base group N = {t = 0}.
WreathSubgroup base_group(int n);
// s U s^{-1}.
WreathSubgroup conjugate_subgroup(const WreathSubgroup& U, const WreathElement& s);

}  // namespace qgroup
