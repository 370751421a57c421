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

#include "qgroup/qsim.hpp"

#include <cmath>
#include <numbers>

#include "qgroup/error.hpp"

namespace qgroup {
namespace {

constexpr double kClean = 1e-12;

void check_dims(std::int64_t group_dim, std::int64_t value_dim) {
  if (group_dim < 1 || value_dim < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "register dimensions must be positive");
  }
  if (group_dim > kMaxSimGroup || group_dim * value_dim > kMaxSimDim) {
    throw Error(ErrorCode::kTooLarge, "state exceeds the simulation bound");
  }
}

std::int64_t sample(const Eigen::VectorXd& p, Rng& rng) {
  const double total = p.sum();
  double u = rng.uniform01() * total;
  std::int64_t last = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last = i;
    if (u < p[i]) return i;
    u -= p[i];
  }
  return last;
}

Eigen::MatrixXcd dft(std::int64_t n, double sign) {
  Eigen::MatrixXcd F(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t y = 0; y < n; ++y) {
    for (std::int64_t g = 0; g < n; ++g) {
      const double angle = sign * 2.0 * std::numbers::pi *
                           static_cast<double>((y * g) % n) / static_cast<double>(n);
      F(y, g) = std::polar(scale, angle);
    }
  }
  return F;
}

// Applies F along the axis of factor j, leaving the other axes and the value
// register alone.
Eigen::VectorXcd transform_axes(const Eigen::VectorXcd& in, const AbelianGroup& G,
                                std::int64_t value_dim, double sign) {
  Eigen::VectorXcd out = in;
  std::int64_t outer = 1;
  std::int64_t inner = G.order() * value_dim;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    const std::int64_t n = G.factor(j);
    inner /= n;
    const Eigen::MatrixXcd F = dft(n, sign);
    using Block = Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                           Eigen::Dynamic, Eigen::RowMajor>>;
    for (std::int64_t o = 0; o < outer; ++o) {
      Block slice(out.data() + o * n * inner, n, inner);
      if (slice.squaredNorm() == 0.0) continue;
      slice = (F * slice).eval();
    }
    outer *= n;
  }
  return out;
}

}  // namespace

QuantumState::QuantumState(std::int64_t group_dim, std::int64_t value_dim)
    : group_dim_(group_dim), value_dim_(value_dim) {
  check_dims(group_dim, value_dim);
  amps_ = Eigen::VectorXcd::Zero(group_dim * value_dim);
  amps_[0] = 1.0;
}

QuantumState::QuantumState(std::int64_t group_dim, std::int64_t value_dim,
                           Eigen::VectorXcd amplitudes)
    : group_dim_(group_dim), value_dim_(value_dim), amps_(std::move(amplitudes)) {
  check_dims(group_dim, value_dim);
  if (amps_.size() != group_dim * value_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "amplitude vector has the wrong length");
  }
}

Eigen::VectorXd QuantumState::group_probabilities() const {
  Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(amps_.data(), group_dim_, value_dim_);
  return m.cwiseAbs2().rowwise().sum();
}

OracleTable::OracleTable(std::vector<std::int64_t> values, std::int64_t value_dim)
    : values_(std::move(values)), value_dim_(value_dim) {
  for (auto v : values_) {
    if (v < 0 || v >= value_dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "oracle value outside its register");
    }
  }
}

QuantumState uniform_superposition(std::int64_t group_dim, std::int64_t value_dim) {
  check_dims(group_dim, value_dim);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(group_dim * value_dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(group_dim));
  for (std::int64_t g = 0; g < group_dim; ++g) amps[g * value_dim] = a;
  return QuantumState(group_dim, value_dim, std::move(amps));
}

QuantumState apply_oracle(const QuantumState& state, OracleTable& f) {
  if (f.group_dim() != state.group_dim_ || f.value_dim() != state.value_dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle does not match the registers");
  }
  const std::int64_t X = state.value_dim_;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amps_.size());
  const auto& table = f.table();
  for (std::int64_t g = 0; g < state.group_dim_; ++g) {
    for (std::int64_t x = 1; x < X; ++x) {
      if (std::abs(state.amps_[g * X + x]) > kClean) {
        throw Error(ErrorCode::kValueRegisterNotClean, "value register is not |0>");
      }
    }
    out[g * X + table[static_cast<std::size_t>(g)]] = state.amps_[g * X];
  }
  f.count_superposed_call();
  return QuantumState(state.group_dim_, X, std::move(out));
}

std::pair<std::int64_t, QuantumState> measure_value_register(const QuantumState& state,
                                                             Rng& rng) {
  const std::int64_t G = state.group_dim_;
  const std::int64_t X = state.value_dim_;
  Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(state.amps_.data(), G, X);
  const Eigen::VectorXd p = m.cwiseAbs2().colwise().sum().transpose();
  const std::int64_t z = sample(p, rng);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amps_.size());
  const double scale = 1.0 / std::sqrt(p[z]);
  for (std::int64_t g = 0; g < G; ++g) out[g * X + z] = state.amps_[g * X + z] * scale;
  return {z, QuantumState(G, X, std::move(out))};
}

QuantumState discard_value_register(const QuantumState& state, std::int64_t z) {
  const std::int64_t X = state.value_dim();
  Eigen::VectorXcd out(state.group_dim());
  for (std::int64_t g = 0; g < state.group_dim(); ++g) {
    for (std::int64_t x = 0; x < X; ++x) {
      if (x != z && std::abs(state.amplitude(g, x)) > kClean) {
        throw Error(ErrorCode::kValueRegisterNotClean, "value register is entangled");
      }
    }
    out[g] = state.amplitude(g, z);
  }
  return QuantumState(state.group_dim(), 1, std::move(out));
}

QuantumState qft_abelian(const QuantumState& state, const AbelianGroup& G) {
  if (G.order() != state.group_dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "group register does not match |G|");
  }
  return QuantumState(state.group_dim_, state.value_dim_,
                      transform_axes(state.amps_, G, state.value_dim_, 1.0));
}

QuantumState inverse_qft_abelian(const QuantumState& state, const AbelianGroup& G) {
  if (G.order() != state.group_dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "group register does not match |G|");
  }
  return QuantumState(state.group_dim_, state.value_dim_,
                      transform_axes(state.amps_, G, state.value_dim_, -1.0));
}

QuantumState hadamard_on_qubits(const QuantumState& state, std::uint64_t mask) {
  const std::int64_t G = state.group_dim_;
  if ((G & (G - 1)) != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "group register is not a power of two");
  }
  if (mask >= static_cast<std::uint64_t>(G)) {
    throw Error(ErrorCode::kDimensionMismatch, "qubit outside the group register");
  }
  Eigen::VectorXcd amps = state.amps_;
  const double r = 1.0 / std::sqrt(2.0);
  const std::int64_t X = state.value_dim_;
  for (int q = 0; (std::int64_t{1} << q) < G; ++q) {
    if (!((mask >> q) & 1U)) continue;
    const std::int64_t bit = std::int64_t{1} << q;
    for (std::int64_t g = 0; g < G; ++g) {
      if (g & bit) continue;
      auto u = amps.segment(g * X, X).eval();
      auto v = amps.segment((g | bit) * X, X).eval();
      amps.segment(g * X, X) = (u + v) * r;
      amps.segment((g | bit) * X, X) = (u - v) * r;
    }
  }
  return QuantumState(G, X, std::move(amps));
}

QuantumState hadamard_transform_f2(const QuantumState& state, int m) {
  if (m < 0 || m > 20 || state.group_dim() != (std::int64_t{1} << m)) {
    throw Error(ErrorCode::kDimensionMismatch, "group register is not 2^m");
  }
  return hadamard_on_qubits(state, (std::uint64_t{1} << m) - 1);
}

std::int64_t measure_group_register(const QuantumState& state, Rng& rng) {
  return sample(state.group_probabilities(), rng);
}

}  // namespace qgroup
