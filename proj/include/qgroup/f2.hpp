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

// Dense linear algebra over F_2 with rows packed into 64-bit words.

#pragma once

#include <cstdint>
#include <vector>

namespace qgroup {

using BitVector = std::uint64_t;  // bit j is column j

struct F2Matrix {
  int cols = 0;
  std::vector<BitVector> rows;
};

int f2_rank(const F2Matrix& M);
// Basis of {x : M x = 0}; has cols - rank vectors.
std::vector<BitVector> f2_nullspace(const F2Matrix& M);
inline int parity(BitVector v) { return __builtin_parityll(v); }

}  // namespace qgroup
