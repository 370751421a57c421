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

#include "qgroup/qep.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

#include "qgroup/error.hpp"

namespace qgroup {
namespace {

using boost::multiprecision::cpp_int;

cpp_int from_big_endian(std::span<const std::uint8_t> bytes) {
  cpp_int v = 0;
  if (!bytes.empty()) import_bits(v, bytes.begin(), bytes.end(), 8, true);
  return v;
}

// Largest power of r that fits in 63 bits, with its exponent.
std::pair<std::uint64_t, int> chunk(std::int64_t r) {
  std::uint64_t p = 1;
  int c = 0;
  while (p <= (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(r)) {
    p *= static_cast<std::uint64_t>(r);
    ++c;
  }
  return {p, c};
}

void check_radix(std::int64_t r) {
  if (r < 2) throw Error(ErrorCode::kInvalidParams, "digit base must be >= 2");
}

}  // namespace

SessionKey SessionKey::from_bytes(Bytes bytes) {
  if (bytes.size() < kMinKeyBytes) {
    throw Error(ErrorCode::kInvalidParams, "session keys need at least 8 bytes");
  }
  return SessionKey{std::move(bytes)};
}

ChaffRatio ChaffRatio::parse(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::kParse, "bad chaff ratio '" + std::string(text) + "'");
    }
    return std::stoull(std::string(s));
  };
  ChaffRatio q;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    q.num = digits(text.substr(0, slash));
    q.den = digits(text.substr(slash + 1));
    if (q.den == 0) throw Error(ErrorCode::kParse, "chaff ratio with zero denominator");
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    q.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) q.den *= 10;
    q.num = digits(whole.empty() ? "0" : whole) * q.den + (frac.empty() ? 0 : digits(frac));
  } else {
    q.num = digits(text);
  }
  const std::uint64_t g = std::gcd(q.num, q.den);
  if (g > 1) {
    q.num /= g;
    q.den /= g;
  }
  return q;
}

GroupElement derive_generator(const SessionKey& key, const AbelianGroup& G) {
  Bytes rotating = key.bytes;
  const bool zero = std::all_of(rotating.begin(), rotating.end(),
                                [](std::uint8_t b) { return b == 0; });
  cpp_int B = from_big_endian(rotating);
  GroupElement g{std::vector<std::int64_t>(G.rank())};
  for (std::size_t j = 0; j < G.rank(); ++j) {
    if (B == 0 && !zero) {
      std::rotate(rotating.begin(), rotating.begin() + 1, rotating.end());
      B = from_big_endian(rotating);
    }
    const auto n = static_cast<std::uint64_t>(G.factor(j));
    g.coords[j] = static_cast<std::int64_t>(static_cast<std::uint64_t>(B % n));
    B /= n;
  }
  if (g == identity(G)) {
    throw Error(ErrorCode::kDegenerateKey,
                "key maps to the identity of " + G.to_string() + "; choose a new key");
  }
  return g;
}

std::uint64_t digit_count(std::int64_t r, std::uint64_t length) {
  check_radix(r);
  if (length == 0) return 0;
  const std::uint64_t bits = 8 * length + 1;
  auto covers = [&](std::uint64_t d) {
    return boost::multiprecision::pow(cpp_int(r), static_cast<unsigned>(d)) >=
           (cpp_int(1) << bits);
  };
  auto d = static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(bits) / std::log2(static_cast<double>(r))));
  while (d > 1 && covers(d - 1)) --d;
  while (!covers(d)) ++d;
  return d;
}

std::uint64_t chaff_count(const ChaffRatio& ratio, std::uint64_t digits) {
  const unsigned __int128 scaled =
      static_cast<unsigned __int128>(ratio.num) * std::max<std::uint64_t>(digits, 1);
  return static_cast<std::uint64_t>((scaled + ratio.den - 1) / ratio.den);
}

std::vector<std::int64_t> encode_digits(std::span<const std::uint8_t> plaintext,
                                        std::int64_t r) {
  const std::uint64_t D = digit_count(r, plaintext.size());
  std::vector<std::int64_t> digits;
  if (D == 0) return digits;
  cpp_int V = from_big_endian(plaintext);
  bit_set(V, static_cast<unsigned>(8 * plaintext.size()));
  const auto [p, c] = chunk(r);
  digits.reserve(D);
  while (digits.size() < D) {
    std::uint64_t low = static_cast<std::uint64_t>(V % p);
    V /= p;
    for (int i = 0; i < c && digits.size() < D; ++i) {
      digits.push_back(static_cast<std::int64_t>(low % static_cast<std::uint64_t>(r)));
      low /= static_cast<std::uint64_t>(r);
    }
  }
  return digits;
}

Bytes decode_digits(const std::vector<std::int64_t>& digits, std::int64_t r,
                    std::uint64_t length) {
  const std::uint64_t D = digit_count(r, length);
  if (digits.size() != D) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(digits.size()) + " digits found, " + std::to_string(D) +
                    " needed for " + std::to_string(length) + " bytes");
  }
  if (D == 0) return {};
  const int c = chunk(r).second;
  cpp_int V = 0;
  // Horner over chunks of c digits, most significant chunk first.
  const std::size_t chunks = (digits.size() + static_cast<std::size_t>(c) - 1) /
                             static_cast<std::size_t>(c);
  for (std::size_t k = chunks; k-- > 0;) {
    const std::size_t lo = k * static_cast<std::size_t>(c);
    const std::size_t hi = std::min(digits.size(), lo + static_cast<std::size_t>(c));
    std::uint64_t value = 0;
    std::uint64_t scale = 1;
    for (std::size_t i = hi; i-- > lo;) {
      value = value * static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(digits[i]);
      scale *= static_cast<std::uint64_t>(r);
    }
    V = V * scale + value;
  }
  const auto top = static_cast<unsigned>(8 * length);
  if (V == 0 || msb(V) != top) {
    throw Error(ErrorCode::kDigitRange, "decoded value outside the plaintext range");
  }
  bit_unset(V, top);
  Bytes out(length, 0);
  Bytes raw;
  if (V != 0) export_bits(V, std::back_inserter(raw), 8, true);
  std::copy(raw.begin(), raw.end(), out.end() - static_cast<std::ptrdiff_t>(raw.size()));
  return out;
}

CiphertextFrame encrypt(const QepParams& params, const SessionKey& key,
                        std::span<const std::uint8_t> plaintext, Rng& rng) {
  const AbelianGroup& G = params.group;
  if (G.order() < 4) throw Error(ErrorCode::kInvalidParams, "group order must be >= 4");
  if (params.chaff_ratio.den == 0) {
    throw Error(ErrorCode::kInvalidParams, "chaff ratio with zero denominator");
  }
  const GroupElement g = derive_generator(key, G);
  const std::int64_t r = element_order(G, g);
  const Subgroup H = make_subgroup(G, {g});
  const bool chaff = params.chaff_ratio.positive();
  if (chaff && r == G.order()) {
    throw Error(ErrorCode::kNoChaffSpace, "the key generates all of " + G.to_string());
  }

  const std::vector<std::int64_t> digits = encode_digits(plaintext, r);
  const std::uint64_t C = chaff ? chaff_count(params.chaff_ratio, digits.size()) : 0;
  std::vector<bool> is_chaff(digits.size() + C, false);
  std::fill(is_chaff.end() - static_cast<std::ptrdiff_t>(C), is_chaff.end(), true);
  Rng placement(params.seed);
  for (std::size_t i = is_chaff.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(placement.uniform(i));
    std::vector<bool>::swap(is_chaff[i - 1], is_chaff[j]);
  }

  CiphertextFrame frame{G, plaintext.size(), {}};
  frame.elements.reserve(is_chaff.size());
  std::size_t next_digit = 0;
  for (bool c : is_chaff) {
    if (!c) {
      frame.elements.push_back(multiply(G, digits[next_digit++], g));
      continue;
    }
    GroupElement x = random_element(G, rng);
    while (H.contains(x)) x = random_element(G, rng);
    frame.elements.push_back(std::move(x));
  }
  return frame;
}

Bytes decode_with_generator(const CiphertextFrame& frame, const GroupElement& generator) {
  const DiscreteLog dlog(frame.group, generator);
  std::vector<std::int64_t> digits;
  for (const auto& x : frame.elements) {
    if (auto m = dlog.log(x)) digits.push_back(*m);
  }
  return decode_digits(digits, dlog.base_order(), frame.plaintext_length);
}

Bytes decrypt(const SessionKey& key, const CiphertextFrame& frame) {
  return decode_with_generator(frame, derive_generator(key, frame.group));
}

std::string_view to_string(OracleLevel level) {
  switch (level) {
    case OracleLevel::kNone: return "none";
    case OracleLevel::kMembership: return "membership";
    case OracleLevel::kCosetSeparating: return "coset";
  }
  return "none";
}

OracleLevel parse_oracle_level(std::string_view text) {
  if (text == "none") return OracleLevel::kNone;
  if (text == "membership") return OracleLevel::kMembership;
  if (text == "coset" || text == "coset-separating") return OracleLevel::kCosetSeparating;
  throw Error(ErrorCode::kParse, "unknown oracle level '" + std::string(text) + "'");
}

}  // namespace qgroup
