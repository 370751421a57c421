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

#include "qgroup/f2.hpp"

#include "qgroup/error.hpp"

namespace qgroup {
namespace {

struct Echelon {
  std::vector<BitVector> rows;  // reduced: each pivot column appears once
  std::vector<int> pivots;
};

Echelon reduce(const F2Matrix& M) {
  if (M.cols < 0 || M.cols > 64) {
    throw Error(ErrorCode::kDimensionMismatch, "F2 matrices are limited to 64 columns");
  }
  const BitVector all = M.cols == 64 ? ~BitVector{0} : (BitVector{1} << M.cols) - 1;
  Echelon e;
  for (BitVector r : M.rows) {
    if (r & ~all) throw Error(ErrorCode::kDimensionMismatch, "row wider than the matrix");
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if ((r >> e.pivots[i]) & 1U) r ^= e.rows[i];
    }
    if (r == 0) continue;
    const int p = __builtin_ctzll(r);
    for (auto& q : e.rows) {
      if ((q >> p) & 1U) q ^= r;
    }
    e.rows.push_back(r);
    e.pivots.push_back(p);
  }
  return e;
}

}  // namespace

int f2_rank(const F2Matrix& M) { return static_cast<int>(reduce(M).rows.size()); }

std::vector<BitVector> f2_nullspace(const F2Matrix& M) {
  const Echelon e = reduce(M);
  BitVector pivot_mask = 0;
  for (int p : e.pivots) pivot_mask |= BitVector{1} << p;
  std::vector<BitVector> basis;
  for (int free = 0; free < M.cols; ++free) {
    if ((pivot_mask >> free) & 1U) continue;
    BitVector x = BitVector{1} << free;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if ((e.rows[i] >> free) & 1U) x |= BitVector{1} << e.pivots[i];
    }
    basis.push_back(x);
  }
  return basis;
}

}  // namespace qgroup
