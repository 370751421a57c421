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

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qgroup/error.hpp"
#include "qgroup/qsim.hpp"

namespace qgroup {
namespace {

using cd = std::complex<double>;

QuantumState random_state(std::int64_t dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v[i] = cd(rng.normal(), rng.normal());
  v.normalize();
  return QuantumState(dim, 1, v);
}

QuantumState basis_state(std::int64_t dim, std::vector<std::int64_t> support) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (auto g : support) v[g] = 1.0 / std::sqrt(static_cast<double>(support.size()));
  return QuantumState(dim, 1, v);
}

TEST(Qsim, UniformSuperposition) {
  const auto s = uniform_superposition(4);
  for (int g = 0; g < 4; ++g) EXPECT_NEAR(std::abs(s.amplitude(g) - cd(0.5)), 0, 1e-15);
  const auto one = uniform_superposition(1);
  EXPECT_NEAR(std::abs(one.amplitude(0) - cd(1.0)), 0, 1e-15);
  EXPECT_THROW(uniform_superposition(kMaxSimGroup + 1), Error);
}

TEST(Qsim, OracleCorrelatesRegisters) {
  OracleTable constant({0, 0, 0, 0}, 2);
  const auto c = apply_oracle(uniform_superposition(4, 2), constant);
  for (int g = 0; g < 4; ++g) {
    EXPECT_NEAR(std::abs(c.amplitude(g, 0)), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(c.amplitude(g, 1)), 0.0, 1e-15);
  }
  EXPECT_EQ(constant.evaluations(), 1);

  OracleTable ident({0, 1, 2, 3}, 4);
  const auto s = apply_oracle(uniform_superposition(4, 4), ident);
  for (int g = 0; g < 4; ++g) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_NEAR(std::abs(s.amplitude(g, x)), g == x ? 0.5 : 0.0, 1e-15);
    }
  }
  EXPECT_EQ(ident.evaluations(), 1);
  EXPECT_EQ(ident.evaluate(2), 2);
  EXPECT_EQ(ident.evaluations(), 2);

  try {
    apply_oracle(s, ident);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValueRegisterNotClean);
  }
}

TEST(Qsim, MeasureValueRegisterCollapsesToCoset) {
  // Z_6 with H = <2>; f labels the coset.
  Rng rng(3);
  int first = 0;
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    OracleTable f({0, 1, 0, 1, 0, 1}, 2);
    auto [z, collapsed] = measure_value_register(apply_oracle(uniform_superposition(6, 2), f), rng);
    const auto p = collapsed.group_probabilities();
    for (int g = 0; g < 6; ++g) {
      ASSERT_NEAR(p[g], g % 2 == z ? 1.0 / 3 : 0.0, 1e-12);
    }
    first += z == 0;
  }
  const double sigma = std::sqrt(draws * 0.25);
  EXPECT_LT(std::abs(first - draws / 2.0), 3 * sigma);

  OracleTable constant({0, 0, 0, 0, 0, 0}, 2);
  auto [z, kept] = measure_value_register(apply_oracle(uniform_superposition(6, 2), constant), rng);
  EXPECT_EQ(z, 0);
  for (int g = 0; g < 6; ++g) EXPECT_NEAR(kept.group_probabilities()[g], 1.0 / 6, 1e-12);
}

TEST(Qsim, QftExamples) {
  const AbelianGroup Z6({6});
  const auto u = qft_abelian(uniform_superposition(6), Z6);
  EXPECT_NEAR(u.group_probabilities()[0], 1.0, 1e-12);
  const auto point = qft_abelian(QuantumState(6, 1), Z6);
  for (int y = 0; y < 6; ++y) EXPECT_NEAR(point.group_probabilities()[y], 1.0 / 6, 1e-12);
  const auto coset = qft_abelian(basis_state(6, {0, 2, 4}), Z6);
  for (int y = 0; y < 6; ++y) {
    EXPECT_NEAR(coset.group_probabilities()[y], (y == 0 || y == 3) ? 0.5 : 0.0, 1e-12);
  }
  const auto shifted = qft_abelian(basis_state(6, {1, 3, 5}), Z6);
  for (int y = 0; y < 6; ++y) {
    EXPECT_NEAR(shifted.group_probabilities()[y], (y == 0 || y == 3) ? 0.5 : 0.0, 1e-12);
  }
  EXPECT_THROW(qft_abelian(uniform_superposition(4), Z6), Error);
}

TEST(Qsim, QftMatchesCharacterSumAndIsUnitary) {
  Rng rng(17);
  for (const auto& n : oracle::groups_up_to(64)) {
    const AbelianGroup G(n);
    const std::int64_t N = G.order();
    for (int t = 0; t < 100; ++t) {
      const auto s = random_state(N, rng);
      const auto f = qft_abelian(s, G);
      ASSERT_NEAR(f.norm(), 1.0, 1e-9);
      const auto back = inverse_qft_abelian(f, G);
      ASSERT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-9);
      if (t < 3) {
        std::vector<cd> in(s.amplitudes().data(), s.amplitudes().data() + N);
        const auto ref = oracle::dft(n, in);
        for (std::int64_t y = 0; y < N; ++y) ASSERT_LT(std::abs(ref[y] - f.amplitude(y)), 1e-9);
      }
    }
  }
}

TEST(Qsim, QftActsOnGroupRegisterOnly) {
  const AbelianGroup G({4, 2});
  Rng rng(5);
  Eigen::VectorXcd v(8 * 3);
  for (auto& a : v) a = cd(rng.normal(), rng.normal());
  v.normalize();
  const QuantumState s(8, 3, v);
  const auto f = qft_abelian(s, G);
  for (int x = 0; x < 3; ++x) {
    std::vector<cd> column(8);
    for (int g = 0; g < 8; ++g) column[g] = s.amplitude(g, x);
    const auto ref = oracle::dft({4, 2}, column);
    for (int y = 0; y < 8; ++y) EXPECT_LT(std::abs(ref[y] - f.amplitude(y, x)), 1e-12);
  }
}

TEST(Qsim, Hadamard) {
  const auto h = hadamard_transform_f2(QuantumState(2, 1), 1);
  EXPECT_NEAR(std::abs(h.amplitude(0) - cd(M_SQRT1_2)), 0, 1e-15);
  EXPECT_NEAR(std::abs(h.amplitude(1) - cd(M_SQRT1_2)), 0, 1e-15);
  Rng rng(8);
  for (int m = 1; m <= 6; ++m) {
    const std::int64_t N = std::int64_t{1} << m;
    const auto s = random_state(N, rng);
    const auto twice = hadamard_transform_f2(hadamard_transform_f2(s, m), m);
    EXPECT_LT((twice.amplitudes() - s.amplitudes()).norm(), 1e-12);
    // H^{(x)m} is the QFT of Z_2^m.
    const AbelianGroup G(std::vector<std::int64_t>(static_cast<std::size_t>(m), 2));
    EXPECT_LT((hadamard_transform_f2(s, m).amplitudes() - qft_abelian(s, G).amplitudes()).norm(),
              1e-12);
  }
  // Partial mask: only qubit 1 of two.
  const auto p = hadamard_on_qubits(QuantumState(4, 1), 0b10);
  EXPECT_NEAR(std::abs(p.amplitude(0)), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(std::abs(p.amplitude(2)), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(std::abs(p.amplitude(1)), 0, 1e-15);
  EXPECT_THROW(hadamard_transform_f2(QuantumState(6, 1), 3), Error);
}

TEST(Qsim, MeasureGroupRegister) {
  Rng rng(99);
  const auto point = basis_state(6, {4});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(measure_group_register(point, rng), 4);

  const auto pair = basis_state(6, {0, 3});
  const int draws = 10000;
  int zero = 0;
  for (int i = 0; i < draws; ++i) {
    const auto g = measure_group_register(pair, rng);
    ASSERT_TRUE(g == 0 || g == 3);
    zero += g == 0;
  }
  EXPECT_LT(std::abs(zero - draws / 2.0), 3 * std::sqrt(draws * 0.25));

  Rng a(1234), b(1234);
  const auto u = uniform_superposition(64);
  for (int i = 0; i < 200; ++i) {
    ASSERT_EQ(measure_group_register(u, a), measure_group_register(u, b));
  }
}

TEST(Qsim, DiscardValueRegister) {
  OracleTable f({0, 1, 0, 1}, 2);
  Rng rng(2);
  auto [z, collapsed] = measure_value_register(apply_oracle(uniform_superposition(4, 2), f), rng);
  const auto g = discard_value_register(collapsed, z);
  EXPECT_EQ(g.value_dim(), 1);
  EXPECT_NEAR(g.norm(), 1.0, 1e-12);
  OracleTable h({0, 1, 0, 1}, 2);
  const auto entangled = apply_oracle(uniform_superposition(4, 2), h);
  EXPECT_THROW(discard_value_register(entangled, 0), Error);
}

}  // namespace
}  // namespace qgroup
