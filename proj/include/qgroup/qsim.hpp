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

// Dense state-vector simulation of the two-register procedures |g>|x>.
// Amplitudes are indexed by g * value_dim + x, with g the mixed-radix index
// of a group element (first coordinate most significant).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qgroup/groups.hpp"
#include "qgroup/rng.hpp"

namespace qgroup {

inline constexpr std::int64_t kMaxSimGroup = 4096;
inline constexpr std::int64_t kMaxSimDim = std::int64_t{1} << 20;

class OracleTable;

class QuantumState {
 public:
  QuantumState(std::int64_t group_dim, std::int64_t value_dim);
  QuantumState(std::int64_t group_dim, std::int64_t value_dim,
               Eigen::VectorXcd amplitudes);

  std::int64_t group_dim() const { return group_dim_; }
  std::int64_t value_dim() const { return value_dim_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::int64_t g, std::int64_t x = 0) const {
    return amps_[g * value_dim_ + x];
  }
  double norm() const { return amps_.norm(); }
  // Marginal distribution of the group register.
  Eigen::VectorXd group_probabilities() const;

 private:
  friend QuantumState apply_oracle(const QuantumState&, OracleTable&);
  friend std::pair<std::int64_t, QuantumState> measure_value_register(const QuantumState&,
                                                                      Rng&);
  friend QuantumState qft_abelian(const QuantumState&, const AbelianGroup&);
  friend QuantumState inverse_qft_abelian(const QuantumState&, const AbelianGroup&);
  friend QuantumState hadamard_on_qubits(const QuantumState&, std::uint64_t);

  std::int64_t group_dim_;
  std::int64_t value_dim_;
  Eigen::VectorXcd amps_;
};

// f : group index -> value index. Every evaluation is counted, a superposed
// call counting once.
class OracleTable {
 public:
  OracleTable(std::vector<std::int64_t> values, std::int64_t value_dim);

  std::int64_t group_dim() const { return static_cast<std::int64_t>(values_.size()); }
  std::int64_t value_dim() const { return value_dim_; }
  std::int64_t evaluations() const { return evaluations_; }

  std::int64_t evaluate(std::int64_t g) {
    ++evaluations_;
    return values_.at(static_cast<std::size_t>(g));
  }
  void count_superposed_call() { ++evaluations_; }
  // Uncounted view, for harness checks.
  const std::vector<std::int64_t>& table() const { return values_; }

 private:
  std::vector<std::int64_t> values_;
  std::int64_t value_dim_;
  std::int64_t evaluations_ = 0;
};

QuantumState uniform_superposition(std::int64_t group_dim, std::int64_t value_dim = 1);
inline QuantumState uniform_superposition(const AbelianGroup& G,
                                          std::int64_t value_dim = 1) {
  return uniform_superposition(G.order(), value_dim);
}

// |g>|0> -> |g>|f(g)>. Throws ValueRegisterNotClean if any amplitude sits
// on a non-zero value.
QuantumState apply_oracle(const QuantumState& state, OracleTable& f);

std::pair<std::int64_t, QuantumState> measure_value_register(const QuantumState& state,
                                                             Rng& rng);
// Drops a value register that is in the basis state |z>.
QuantumState discard_value_register(const QuantumState& state, std::int64_t z);

QuantumState qft_abelian(const QuantumState& state, const AbelianGroup& G);
QuantumState inverse_qft_abelian(const QuantumState& state, const AbelianGroup& G);

// Hadamard on the group-register qubits selected by mask (bit i = qubit i of
// the group index). Requires a power-of-two group register.
QuantumState hadamard_on_qubits(const QuantumState& state, std::uint64_t mask);
QuantumState hadamard_transform_f2(const QuantumState& state, int m);

std::int64_t measure_group_register(const QuantumState& state, Rng& rng);

}  // namespace qgroup
