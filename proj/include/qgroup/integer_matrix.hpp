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

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace qgroup {

// Arbitrary-precision integer usable as an Eigen scalar. Thin wrapper over
// cpp_int so Eigen expressions never see the multiprecision expression types.
class Integer {
 public:
  using Rep = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(std::int64_t v) : v_(v) {}  // NOLINT(runtime/explicit)
  Integer(int v) : v_(v) {}           // NOLINT(runtime/explicit)
  explicit Integer(Rep v) : v_(std::move(v)) {}

  const Rep& rep() const { return v_; }
  std::int64_t to_int64() const { return v_.convert_to<std::int64_t>(); }
  bool fits_int64() const {
    return v_ >= Rep(INT64_MIN) && v_ <= Rep(INT64_MAX);
  }

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  // Truncating division, same convention as built-in integers.
  Integer& operator/=(const Integer& o) { v_ /= o.v_; return *this; }
  Integer& operator%=(const Integer& o) { v_ %= o.v_; return *this; }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
  friend Integer operator-(const Integer& a) { return Integer(Rep(-a.v_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Integer& a, const Integer& b) { return a.v_ != b.v_; }
  friend bool operator<(const Integer& a, const Integer& b) { return a.v_ < b.v_; }
  friend bool operator>(const Integer& a, const Integer& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Integer& a, const Integer& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Integer& a, const Integer& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Integer& a) {
    return os << a.v_;
  }

 private:
  Rep v_;
};

inline Integer abs(const Integer& a) { return a < Integer(0) ? -a : a; }

}  // namespace qgroup

namespace Eigen {
template <>
struct NumTraits<qgroup::Integer> : GenericNumTraits<qgroup::Integer> {
  using Real = qgroup::Integer;
  using NonInteger = qgroup::Integer;
  using Nested = qgroup::Integer;
  using Literal = qgroup::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace qgroup {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntegerMatrix = Matrix<Integer>;

namespace detail {

template <typename Scalar>
Scalar magnitude(const Scalar& a) {
  return a < Scalar(0) ? Scalar(-a) : a;
}

template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if (a % b != Scalar(0) && ((a < Scalar(0)) != (b < Scalar(0)))) q -= Scalar(1);
  return q;
}

}  // namespace detail

template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U;  // rows x rows, unimodular
  Matrix<Scalar> D;  // rows x cols, diagonal, d_1 | d_2 | ...
  Matrix<Scalar> V;  // cols x cols, unimodular

  Eigen::Index rank() const {
    Eigen::Index r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != Scalar(0)) ++r;
    return r;
  }
};

/// Smith normal form U * M * V = D.
///
/// Diagonal entries are non-negative, the non-zero ones come first and each
/// divides the next. Works for any integral scalar; use Integer when the
/// unimodular factors may outgrow machine words.
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SmithDecomposition<Scalar> out{Matrix<Scalar>::Identity(rows, rows), m,
                                 Matrix<Scalar>::Identity(cols, cols)};
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;

  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pivot: smallest non-zero magnitude in the trailing block.
      Eigen::Index pi = -1, pj = -1;
      Scalar best(0);
      for (Eigen::Index i = t; i < rows; ++i) {
        for (Eigen::Index j = t; j < cols; ++j) {
          if (D(i, j) == Scalar(0)) continue;
          Scalar mag = detail::magnitude(D(i, j));
          if (pi < 0 || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) return out;  // trailing block is zero
      if (pi != t) {
        D.row(t).swap(D.row(pi));
        U.row(t).swap(U.row(pi));
      }
      if (pj != t) {
        D.col(t).swap(D.col(pj));
        V.col(t).swap(V.col(pj));
      }

      bool cleared = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (D(i, t) == Scalar(0)) continue;
        const Scalar q = D(i, t) / D(t, t);
        D.row(i) -= q * D.row(t);
        U.row(i) -= q * U.row(t);
        if (D(i, t) != Scalar(0)) cleared = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (D(t, j) == Scalar(0)) continue;
        const Scalar q = D(t, j) / D(t, t);
        D.col(j) -= q * D.col(t);
        V.col(j) -= q * V.col(t);
        if (D(t, j) != Scalar(0)) cleared = false;
      }
      if (!cleared) continue;

      // Divisibility: fold any offending row into the pivot row and retry.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (D(i, j) % D(t, t) != Scalar(0)) {
            bad = i;
            break;
          }
        }
      }
      if (bad < 0) break;
      D.row(t) += D.row(bad);
      U.row(t) += U.row(bad);
    }
    if (D(t, t) < Scalar(0)) {
      D.row(t) *= Scalar(-1);
      U.row(t) *= Scalar(-1);
    }
  }
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of m.
/// Returns only the non-zero rows: echelon form, positive pivots, entries
/// above each pivot reduced into [0, pivot).
template <typename Derived>
Matrix<typename Derived::Scalar> hermite_normal_form(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> A = m;
  const Eigen::Index rows = A.rows();
  const Eigen::Index cols = A.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    while (true) {
      Eigen::Index pi = -1;
      Scalar best(0);
      for (Eigen::Index i = r; i < rows; ++i) {
        if (A(i, c) == Scalar(0)) continue;
        Scalar mag = detail::magnitude(A(i, c));
        if (pi < 0 || mag < best) {
          best = mag;
          pi = i;
        }
      }
      if (pi < 0) break;
      if (pi != r) A.row(r).swap(A.row(pi));
      bool cleared = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (A(i, c) == Scalar(0)) continue;
        const Scalar q = A(i, c) / A(r, c);
        A.row(i) -= q * A.row(r);
        if (A(i, c) != Scalar(0)) cleared = false;
      }
      if (cleared) break;
    }
    if (A(r, c) == Scalar(0)) continue;  // no pivot in this column
    if (A(r, c) < Scalar(0)) A.row(r) *= Scalar(-1);
    for (Eigen::Index i = 0; i < r; ++i) {
      const Scalar q = detail::floor_div(A(i, c), A(r, c));
      if (q != Scalar(0)) A.row(i) -= q * A.row(r);
    }
    ++r;
  }
  return A.topRows(r);
}

/// Rows spanning the integer left kernel {x : x^T m = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> left_kernel(const Eigen::MatrixBase<Derived>& m) {
  auto snf = smith_normal_form(m);
  const Eigen::Index rank = snf.rank();
  return snf.U.bottomRows(m.rows() - rank);
}

}  // namespace qgroup
