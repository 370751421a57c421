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

#include <gtest/gtest.h>

#include <functional>

#include "qgroup/error.hpp"
#include "qgroup/qep.hpp"

namespace qgroup {
namespace {

GroupElement el(std::vector<std::int64_t> c) { return GroupElement{std::move(c)}; }

Bytes random_bytes(std::size_t size, Rng& rng) {
  Bytes out(size);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.uniform(256));
  return out;
}

SessionKey key_with_tail(std::vector<std::uint8_t> tail) {
  Bytes bytes(8 - tail.size(), 0);
  bytes.insert(bytes.end(), tail.begin(), tail.end());
  return SessionKey::from_bytes(bytes);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

// A key whose generator is not of full order, so chaff has room.
SessionKey chaff_key(const AbelianGroup& G, Rng& rng) {
  for (;;) {
    const auto key = SessionKey::from_bytes(random_bytes(16, rng));
    try {
      if (element_order(G, derive_generator(key, G)) < G.order()) return key;
    } catch (const Error&) {
    }
  }
}

TEST(Qep, KeysAndRatios) {
  EXPECT_EQ(code_of([] { SessionKey::from_bytes(Bytes(7, 1)); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(ChaffRatio::parse("2").value(), 2.0);
  EXPECT_EQ(ChaffRatio::parse("2.5").value(), 2.5);
  EXPECT_EQ(ChaffRatio::parse("3/2").value(), 1.5);
  EXPECT_EQ(ChaffRatio::parse("0").positive(), false);
  EXPECT_THROW(ChaffRatio::parse("-1"), Error);
  EXPECT_THROW(ChaffRatio::parse("1/0"), Error);
  EXPECT_THROW(ChaffRatio::parse("abc"), Error);
}

TEST(Qep, DeriveGeneratorExamples) {
  const AbelianGroup Z8({8});
  EXPECT_EQ(code_of([&] { derive_generator(SessionKey::from_bytes(Bytes(8, 0)), Z8); }),
            ErrorCode::kDegenerateKey);
  EXPECT_EQ(code_of([&] { derive_generator(SessionKey::from_bytes(Bytes(32, 0)), Z8); }),
            ErrorCode::kDegenerateKey);
  const auto g = derive_generator(key_with_tail({5}), Z8);
  EXPECT_EQ(g, el({5}));
  EXPECT_EQ(element_order(Z8, g), 8);
  Rng rng(1);
  const AbelianGroup G({64, 16, 4});
  for (int i = 0; i < 100; ++i) {
    const auto key = SessionKey::from_bytes(random_bytes(8 + rng.uniform(24), rng));
    EXPECT_EQ(derive_generator(key, G), derive_generator(key, G));
  }
}

TEST(Qep, DegenerateKeyFrequencyMatchesIdentityMappedKeys) {
  const AbelianGroup G({8, 4});
  Rng rng(2);
  int degenerate = 0, identity_mapped = 0;
  for (int i = 0; i < 1000; ++i) {
    Bytes bytes = random_bytes(8, rng);
    bytes[0] |= 0x80;  // keeps B large, so the digits come from one read
    // B mod 8 and (B / 8) mod 4 are the low five bits of the last byte.
    identity_mapped += (bytes.back() & 31) == 0;
    try {
      derive_generator(SessionKey::from_bytes(bytes), G);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kDegenerateKey);
      ++degenerate;
    }
  }
  EXPECT_EQ(degenerate, identity_mapped);
  EXPECT_GT(degenerate, 0);
}

TEST(Qep, DigitEncoding) {
  EXPECT_EQ(digit_count(4, 0), 0u);
  EXPECT_EQ(digit_count(2, 1), 9u);
  EXPECT_EQ(digit_count(4, 1), 5u);   // 4^5 = 1024 >= 512
  EXPECT_EQ(digit_count(3, 1), 6u);   // 3^6 = 729 >= 512 > 243
  EXPECT_EQ(chaff_count(ChaffRatio{2, 1}, 0), 2u);
  EXPECT_EQ(chaff_count(ChaffRatio{3, 2}, 5), 8u);
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto r = static_cast<std::int64_t>(2 + rng.uniform(5000));
    const Bytes p = random_bytes(rng.uniform(300), rng);
    const auto d = encode_digits(p, r);
    ASSERT_EQ(d.size(), digit_count(r, p.size()));
    for (auto x : d) ASSERT_TRUE(x >= 0 && x < r);
    ASSERT_EQ(decode_digits(d, r, p.size()), p);
  }
  // One byte 0x41 in base 4: 256 + 65 = 321 = 1·256 + 1·64 + 0·16 + 0·4 + 1.
  EXPECT_EQ(encode_digits(Bytes{0x41}, 4), (std::vector<std::int64_t>{1, 0, 0, 1, 1}));
  EXPECT_EQ(code_of([] { decode_digits({1, 0, 0, 1}, 4, 1); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { decode_digits({1, 0, 0, 0, 0}, 4, 1); }), ErrorCode::kDigitRange);
}

TEST(Qep, DataElementIsDigitTimesGenerator) {
  // Z_8 with g = (2): r = 4 and digit 3 maps to (6).
  const AbelianGroup Z8({8});
  const auto key = key_with_tail({2});
  const auto g = derive_generator(key, Z8);
  ASSERT_EQ(g, el({2}));
  ASSERT_EQ(element_order(Z8, g), 4);
  EXPECT_EQ(multiply(Z8, 3, g), el({6}));
  Rng rng(4);
  const Bytes p{0x41};
  const auto frame = encrypt(QepParams{Z8, ChaffRatio{0, 1}, 1}, key, p, rng);
  std::vector<GroupElement> expected;
  for (auto d : encode_digits(p, 4)) expected.push_back(multiply(Z8, d, g));
  EXPECT_EQ(frame.elements, expected);
  EXPECT_EQ(frame.elements[0], el({2}));
  EXPECT_EQ(decrypt(key, frame), p);
}

TEST(Qep, EmptyPlaintextCarriesOnlyChaff) {
  const AbelianGroup G({16});
  Rng rng(5);
  const auto key = key_with_tail({2});
  const auto frame = encrypt(QepParams{G, ChaffRatio{2, 1}, 9}, key, Bytes{}, rng);
  EXPECT_EQ(frame.elements.size(), 2u);
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  for (const auto& x : frame.elements) EXPECT_FALSE(H.contains(x));
  EXPECT_TRUE(decrypt(key, frame).empty());
}

TEST(Qep, ChaffRules) {
  Rng rng(6);
  const AbelianGroup Z8({8});
  EXPECT_EQ(code_of([&] {
              encrypt(QepParams{Z8, ChaffRatio{1, 1}, 0}, key_with_tail({5}), Bytes{1}, rng);
            }),
            ErrorCode::kNoChaffSpace);
  // Without chaff a full-order key is fine.
  const auto f = encrypt(QepParams{Z8, ChaffRatio{0, 1}, 0}, key_with_tail({5}), Bytes{1}, rng);
  EXPECT_EQ(decrypt(key_with_tail({5}), f), Bytes{1});
  EXPECT_EQ(code_of([&] {
              encrypt(QepParams{AbelianGroup({3}), ChaffRatio{0, 1}, 0}, key_with_tail({1}),
                      Bytes{1}, rng);
            }),
            ErrorCode::kInvalidParams);
}

TEST(Qep, FramesSeparateDataAndChaff) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const AbelianGroup G({static_cast<std::int64_t>(4 << rng.uniform(6)), 4});
    const auto key = chaff_key(G, rng);
    const Bytes p = random_bytes(rng.uniform(64), rng);
    const ChaffRatio ratio{1 + rng.uniform(3), 1};
    const auto frame = encrypt(QepParams{G, ratio, rng.next()}, key, p, rng);
    const auto H = make_subgroup(G, {derive_generator(key, G)});
    const auto D = digit_count(H.order(), p.size());
    std::uint64_t data = 0;
    for (const auto& x : frame.elements) data += H.contains(x);
    ASSERT_EQ(data, D);
    ASSERT_EQ(frame.elements.size() - data, chaff_count(ratio, D));
  }
}

TEST(Qep, ChaffPlacementDependsOnlyOnSeed) {
  const AbelianGroup G({16, 4});
  Rng rng(8);
  const auto key = chaff_key(G, rng);
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  const Bytes p = random_bytes(20, rng);
  auto pattern = [&](std::uint64_t seed, std::uint64_t chaff_seed) {
    Rng chaff(chaff_seed);
    const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, seed}, key, p, chaff);
    std::vector<bool> mask;
    for (const auto& x : frame.elements) mask.push_back(H.contains(x));
    return mask;
  };
  EXPECT_EQ(pattern(1, 100), pattern(1, 200));
  EXPECT_NE(pattern(1, 100), pattern(2, 100));
}

TEST(Qep, RoundTripAcrossConfigurations) {
  Rng rng(9);
  const std::vector<ChaffRatio> ratios{{0, 1}, {1, 1}, {3, 1}};
  for (int t = 0; t < 200; ++t) {
    std::vector<std::int64_t> factors{static_cast<std::int64_t>(8 << rng.uniform(4))};
    if (rng.uniform(2)) factors.push_back(2 << rng.uniform(3));
    const AbelianGroup G(factors);
    const auto ratio = ratios[t % 3];
    const auto key = ratio.positive() ? chaff_key(G, rng) : [&] {
      for (;;) {
        const auto k = SessionKey::from_bytes(random_bytes(8 + rng.uniform(24), rng));
        try {
          derive_generator(k, G);
          return k;
        } catch (const Error&) {
        }
      }
    }();
    const Bytes p = random_bytes(rng.uniform(4097), rng);
    const auto frame = encrypt(QepParams{G, ratio, rng.next()}, key, p, rng);
    ASSERT_EQ(decrypt(key, frame), p);
    ASSERT_EQ(deserialize(serialize(frame)), frame);
  }
}

TEST(Qep, SubstitutionByNonMemberIsDetectedAtEveryPosition) {
  const AbelianGroup G({16, 4});
  Rng rng(10);
  const auto key = chaff_key(G, rng);
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  const Bytes p = random_bytes(12, rng);
  const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, 3}, key, p, rng);
  int data_positions = 0;
  for (std::size_t i = 0; i < frame.elements.size(); ++i) {
    if (!H.contains(frame.elements[i])) continue;
    ++data_positions;
    auto tampered = frame;
    do {
      tampered.elements[i] = random_element(G, rng);
    } while (H.contains(tampered.elements[i]));
    ASSERT_EQ(code_of([&] { decrypt(key, tampered); }), ErrorCode::kLengthMismatch) << i;
  }
  EXPECT_EQ(data_positions, static_cast<int>(digit_count(H.order(), p.size())));
}

TEST(Qep, WrongKeysAreDetected) {
  const AbelianGroup G({64, 64});
  Rng rng(11);
  const auto key = chaff_key(G, rng);
  const Bytes p = random_bytes(64, rng);
  const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, 4}, key, p, rng);
  int detected = 0, accepted_wrong = 0;
  for (int i = 0; i < 100; ++i) {
    const auto wrong = SessionKey::from_bytes(random_bytes(16, rng));
    try {
      accepted_wrong += decrypt(wrong, frame) != p;
    } catch (const Error&) {
      ++detected;
    }
  }
  EXPECT_GE(detected, 95);
  EXPECT_LE(accepted_wrong, 100 - detected);
}

TEST(Qep, WireFormat) {
  const AbelianGroup G({8, 2});
  const CiphertextFrame frame{G, 3, {el({1, 0}), el({7, 1})}};
  const Bytes bytes = serialize(frame);
  // magic, version, k, factors, count, length, elements
  ASSERT_EQ(bytes.size(), 4u + 1 + 2 + 2 * 4 + 8 + 8 + 2 * 2 * 4);
  EXPECT_EQ(Bytes(bytes.begin(), bytes.begin() + 7), (Bytes{'Q', 'E', 'P', '1', 1, 2, 0}));
  EXPECT_EQ(bytes[7], 8);
  EXPECT_EQ(bytes[11], 2);
  EXPECT_EQ(bytes[15], 2);  // element count, little-endian
  EXPECT_EQ(bytes[23], 3);  // plaintext length
  EXPECT_EQ(bytes[39], 7);
  EXPECT_EQ(deserialize(bytes), frame);

  auto offset_of = [](const Bytes& b) -> std::optional<std::uint64_t> {
    try {
      deserialize(b);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedFrame);
      return e.offset();
    }
    ADD_FAILURE() << "accepted a malformed frame";
    return std::nullopt;
  };
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    EXPECT_TRUE(offset_of(Bytes(bytes.begin(), bytes.begin() + cut)).has_value()) << cut;
  }
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(offset_of(bad), 0u);
  bad = bytes;
  bad[4] = 2;
  EXPECT_EQ(offset_of(bad), 4u);
  bad = bytes;
  bad[11] = 1;
  EXPECT_EQ(offset_of(bad), 11u);
  bad = bytes;
  bad[35] = 2;  // second coordinate of the first element is mod 2
  EXPECT_EQ(offset_of(bad), 35u);
  bad = bytes;
  bad.push_back(0);
  EXPECT_EQ(offset_of(bad), bytes.size());
}

TEST(Attack, OracleLevels) {
  EXPECT_EQ(parse_oracle_level("none"), OracleLevel::kNone);
  EXPECT_EQ(parse_oracle_level("membership"), OracleLevel::kMembership);
  EXPECT_EQ(parse_oracle_level("coset"), OracleLevel::kCosetSeparating);
  EXPECT_EQ(parse_oracle_level("coset-separating"), OracleLevel::kCosetSeparating);
  EXPECT_THROW(parse_oracle_level("psychic"), Error);
  EXPECT_EQ(to_string(OracleLevel::kMembership), "membership");
}

TEST(Attack, CosetOracleOnZ16) {
  const AbelianGroup G({16});
  const auto key = key_with_tail({2});
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  ASSERT_EQ(H.order(), 8);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Bytes p = random_bytes(24, rng);
    const auto frame = encrypt(QepParams{G, ChaffRatio{1, 1}, rng.next()}, key, p, rng);
    AttackSetup setup;
    setup.level = OracleLevel::kCosetSeparating;
    setup.true_subgroup = H;
    setup.true_plaintext = p;
    setup.known_prefix = Bytes(p.begin(), p.begin() + 4);
    const auto report = eve_attack(frame, setup, rng);
    EXPECT_TRUE(report.subgroup_correct);
    EXPECT_TRUE(report.success);
    EXPECT_LE(report.generators_tried, 4);  // phi(8)
    EXPECT_GT(report.oracle_evaluations, 0);
    EXPECT_EQ(report.work(), report.oracle_evaluations + report.generators_tried);
  }
}

TEST(Attack, NoOracleWithoutChaffSeesH) {
  const AbelianGroup G({32, 4});
  Rng rng(13);
  int correct = 0;
  for (int t = 0; t < 20; ++t) {
    const auto key = chaff_key(G, rng);
    const auto H = make_subgroup(G, {derive_generator(key, G)});
    const Bytes p = random_bytes(32, rng);
    const auto frame = encrypt(QepParams{G, ChaffRatio{0, 1}, 0}, key, p, rng);
    AttackSetup setup;
    setup.true_subgroup = H;
    setup.true_plaintext = p;
    const auto report = eve_attack(frame, setup, rng);
    ASSERT_TRUE(report.recovered_subgroup.has_value());
    correct += *report.recovered_subgroup == H;
    EXPECT_EQ(report.oracle_evaluations, 0);
    EXPECT_GE(report.generators_tried, 1);
  }
  EXPECT_GE(correct, 19);
}

TEST(Attack, MembershipOracle) {
  const AbelianGroup G({16, 8});
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const auto key = chaff_key(G, rng);
    const auto H = make_subgroup(G, {derive_generator(key, G)});
    const Bytes p = random_bytes(16, rng);
    const auto frame = encrypt(QepParams{G, ChaffRatio{3, 1}, rng.next()}, key, p, rng);
    AttackSetup setup;
    setup.level = OracleLevel::kMembership;
    setup.true_subgroup = H;
    setup.true_plaintext = p;
    setup.known_prefix = Bytes(p.begin(), p.begin() + 2);
    const auto report = eve_attack(frame, setup, rng);
    EXPECT_TRUE(report.subgroup_correct);
    EXPECT_EQ(report.oracle_evaluations, static_cast<std::int64_t>(frame.elements.size()));
    EXPECT_TRUE(report.success);
  }
}

TEST(Attack, BudgetAndMissingOracle) {
  const AbelianGroup G({64});
  Rng rng(15);
  const auto key = key_with_tail({4});
  const auto H = make_subgroup(G, {derive_generator(key, G)});
  const Bytes p = random_bytes(16, rng);
  const auto frame = encrypt(QepParams{G, ChaffRatio{0, 1}, 0}, key, p, rng);
  AttackSetup setup;
  setup.true_subgroup = H;
  setup.true_plaintext = p;
  setup.budget = 0;
  const auto report = eve_attack(frame, setup, rng);
  EXPECT_TRUE(report.budget_exceeded);
  EXPECT_FALSE(report.success);
  EXPECT_EQ(report.generators_tried, 0);

  AttackSetup blind;
  blind.level = OracleLevel::kCosetSeparating;
  EXPECT_THROW(eve_attack(frame, blind, rng), Error);
}

TEST(Attack, HeaderSuppressedRuns) {
  const AbelianGroup G({16});
  Rng rng(16);
  const auto key = key_with_tail({2});
  const Bytes p = random_bytes(8, rng);
  const auto frame = encrypt(QepParams{G, ChaffRatio{0, 1}, 0}, key, p, rng);
  AttackSetup setup;
  setup.header_suppressed = true;
  setup.true_plaintext = p;
  setup.known_prefix = Bytes(p.begin(), p.begin() + 2);
  const auto report = eve_attack(frame, setup, rng);
  EXPECT_GE(report.candidate_subgroups, 1);
  EXPECT_GE(report.generators_tried, 1);
}

}  // namespace
}  // namespace qgroup
