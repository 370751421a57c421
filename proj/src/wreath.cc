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

#include "qgroup/wreath.hpp"

#include <algorithm>
#include <deque>

#include "qgroup/error.hpp"

namespace qgroup {
namespace {

void check_n(int n) {
  if (n < 1) throw Error(ErrorCode::kDimensionMismatch, "W_n needs n >= 1");
  if (n > kMaxWreathN) {
    throw Error(ErrorCode::kTooLarge, "W_n is only materialized for n <= 4");
  }
}

std::uint32_t mask(int n) { return (std::uint32_t{1} << n) - 1; }

std::string bits(std::uint32_t v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((v >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint32_t parse_bits(std::string_view s) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v |= std::uint32_t{1} << i;
    } else if (s[i] != '0') {
      throw Error(ErrorCode::kParse, "bad bit '" + std::string(1, s[i]) + "'");
    }
  }
  return v;
}

}  // namespace

WreathElement w_identity(int n) {
  check_n(n);
  return WreathElement{n, 0, 0, false};
}

WreathElement w_compose(const WreathElement& x, const WreathElement& y) {
  if (x.n != y.n) {
    throw Error(ErrorCode::kDimensionMismatch, "elements of different W_n");
  }
  const std::uint32_t a2 = x.t ? y.b : y.a;
  const std::uint32_t b2 = x.t ? y.a : y.b;
  return WreathElement{x.n, x.a ^ a2, x.b ^ b2, x.t != y.t};
}

WreathElement w_inverse(const WreathElement& x) {
  if (!x.t) return x;
  return WreathElement{x.n, x.b, x.a, true};
}

std::uint32_t w_index(const WreathElement& x) {
  return x.a | (x.b << x.n) | (static_cast<std::uint32_t>(x.t) << (2 * x.n));
}

WreathElement w_from_index(int n, std::uint32_t index) {
  check_n(n);
  if (index >= w_order(n)) {
    throw Error(ErrorCode::kDimensionMismatch, "index outside W_n");
  }
  return WreathElement{n, index & mask(n), (index >> n) & mask(n),
                       ((index >> (2 * n)) & 1U) != 0};
}

WreathElement w_random(int n, Rng& rng) {
  return w_from_index(n, static_cast<std::uint32_t>(rng.uniform(w_order(n))));
}

std::string to_string(const WreathElement& x) {
  return bits(x.a, x.n) + "|" + bits(x.b, x.n) + "|" + (x.t ? "1" : "0");
}

WreathElement parse_wreath_element(std::string_view text) {
  const auto p1 = text.find('|');
  const auto p2 = p1 == std::string_view::npos ? p1 : text.find('|', p1 + 1);
  if (p2 == std::string_view::npos) {
    throw Error(ErrorCode::kParse, "expected a|b|t, got '" + std::string(text) + "'");
  }
  const auto a = text.substr(0, p1);
  const auto b = text.substr(p1 + 1, p2 - p1 - 1);
  const auto t = text.substr(p2 + 1);
  if (a.empty() || a.size() != b.size() || t.size() != 1) {
    throw Error(ErrorCode::kParse, "malformed element '" + std::string(text) + "'");
  }
  const int n = static_cast<int>(a.size());
  check_n(n);
  return WreathElement{n, parse_bits(a), parse_bits(b), parse_bits(t) != 0};
}

bool WreathSubgroup::contains(const WreathElement& x) const {
  return x.n == n_ && member_[w_index(x)];
}

WreathSubgroup w_closure(int n, const std::vector<WreathElement>& gens) {
  check_n(n);
  WreathSubgroup H;
  H.n_ = n;
  H.member_.assign(w_order(n), false);
  H.member_[0] = true;
  std::vector<WreathElement> found{w_identity(n)};
  for (const auto& g : gens) {
    if (g.n != n) throw Error(ErrorCode::kDimensionMismatch, "generator of another W_n");
    if (H.member_[w_index(g)]) continue;
    H.generators_.push_back(g);
    // Saturate: multiply every known element by every generator on the right.
    std::deque<WreathElement> queue(found.begin(), found.end());
    while (!queue.empty()) {
      const WreathElement x = queue.front();
      queue.pop_front();
      for (const auto& s : H.generators_) {
        const WreathElement y = w_compose(x, s);
        if (!H.member_[w_index(y)]) {
          H.member_[w_index(y)] = true;
          found.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return w_index(x) < w_index(y);
  });
  H.elements_ = std::move(found);
  return H;
}

WreathSubgroup base_group(int n) {
  std::vector<WreathElement> gens;
  for (int i = 0; i < n; ++i) {
    gens.push_back(WreathElement{n, std::uint32_t{1} << i, 0, false});
    gens.push_back(WreathElement{n, 0, std::uint32_t{1} << i, false});
  }
  return w_closure(n, gens);
}

WreathSubgroup conjugate_subgroup(const WreathSubgroup& U, const WreathElement& s) {
  if (s.n != U.n()) throw Error(ErrorCode::kDimensionMismatch, "conjugator of another W_n");
  const WreathElement s_inv = w_inverse(s);
  std::vector<WreathElement> gens;
  for (const auto& u : U.generators()) gens.push_back(w_compose(w_compose(s, u), s_inv));
  return w_closure(U.n(), gens);
}

}  // namespace qgroup
