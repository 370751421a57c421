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

// Subgroup encryption: the session key fixes a generator g_K, plaintext is
// written in base r = ord(g_K) as multiples of g_K, and chaff drawn from
// G \ <g_K> is interleaved. Bob filters by membership and takes discrete
// logarithms.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgroup/groups.hpp"
#include "qgroup/rng.hpp"

namespace qgroup {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kMinKeyBytes = 8;

struct SessionKey {
  Bytes bytes;

  // Throws InvalidParams for keys shorter than 8 bytes.
  static SessionKey from_bytes(Bytes bytes);
};

// Non-negative rational number of chaff elements per data element.
struct ChaffRatio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // "2", "2.5", "3/2".
  static ChaffRatio parse(std::string_view text);
  bool positive() const { return num > 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct QepParams {
  AbelianGroup group;
  ChaffRatio chaff_ratio;
  std::uint64_t seed = 0;  // chaff placement
};

struct CiphertextFrame {
  AbelianGroup group;
  std::uint64_t plaintext_length = 0;
  std::vector<GroupElement> elements;

  friend bool operator==(const CiphertextFrame&, const CiphertextFrame&) = default;
};

// Key bytes read as a big-endian integer B; coordinate j takes B mod n_j and
// B becomes B div n_j. When B runs out the key is rotated left by one byte
// and read again. Throws DegenerateKey if the result is the identity.
GroupElement derive_generator(const SessionKey& key, const AbelianGroup& G);

// Digits needed for a plaintext of the given byte length: the smallest D with
// r^D >= 2^{8 length + 1}; zero for an empty plaintext.
std::uint64_t digit_count(std::int64_t r, std::uint64_t length);
// ceil(ratio * max(D, 1)).
std::uint64_t chaff_count(const ChaffRatio& ratio, std::uint64_t digits);

// The plaintext P of length L is encoded as V = 2^{8L} + P (big-endian),
// written in base r least significant digit first.
std::vector<std::int64_t> encode_digits(std::span<const std::uint8_t> plaintext,
                                        std::int64_t r);
// Inverse of encode_digits. Throws LengthMismatch if the digit count is not
// digit_count(r, length) and DigitRange if V is outside [2^{8L}, 2^{8L+1}).
Bytes decode_digits(const std::vector<std::int64_t>& digits, std::int64_t r,
                    std::uint64_t length);

// Errors: InvalidParams (|G| < 4), DegenerateKey, NoChaffSpace.
CiphertextFrame encrypt(const QepParams& params, const SessionKey& key,
                        std::span<const std::uint8_t> plaintext, Rng& rng);
Bytes decrypt(const SessionKey& key, const CiphertextFrame& frame);

// Decodes the members of <generator> in frame order.
Bytes decode_with_generator(const CiphertextFrame& frame, const GroupElement& generator);

// Little-endian wire format:
//   "QEP1" | u8 version=1 | u16 k | k x u32 n_j | u64 E | u64 L | E x k x u32
Bytes serialize(const CiphertextFrame& frame);
CiphertextFrame deserialize(std::span<const std::uint8_t> bytes);

enum class OracleLevel { kNone, kMembership, kCosetSeparating };

std::string_view to_string(OracleLevel level);
OracleLevel parse_oracle_level(std::string_view text);

struct AttackSetup {
  OracleLevel level = OracleLevel::kNone;
  // Backs the membership and coset-separating oracles handed to Eve.
  std::optional<Subgroup> true_subgroup;
  // Used only to grade the outcome.
  std::optional<Bytes> true_plaintext;
  // Plaintext bytes Eve knows in advance.
  Bytes known_prefix;
  // Maximum number of candidate generators Eve may try.
  std::int64_t budget = 1 << 16;
  // Eve does not see the invariant factors and has to guess them.
  bool header_suppressed = false;
};

struct AttackReport {
  OracleLevel level = OracleLevel::kNone;
  std::optional<Subgroup> recovered_subgroup;
  std::optional<Bytes> decoded_plaintext;
  // The recovered subgroup equals the true one (when known).
  bool subgroup_correct = false;
  // Eve's accepted decoding equals the true plaintext.
  bool success = false;
  bool budget_exceeded = false;
  std::int64_t oracle_evaluations = 0;
  std::int64_t generators_tried = 0;
  std::int64_t candidate_subgroups = 0;
  std::int64_t work() const { return oracle_evaluations + generators_tried; }
};

AttackReport eve_attack(const CiphertextFrame& frame, const AttackSetup& setup, Rng& rng);

}  // namespace qgroup
