// Copyright 2026 The Heegaard Authors.
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

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heegaard/core.hpp"

namespace heegaard {

/// Square matrix over an exact integer type, stored row-major.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, T(0)) {
    if (n < 0) throw PreconditionViolated("matrix size must be nonnegative");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : n_(static_cast<int>(rows.size())) {
    a_.reserve(static_cast<size_t>(n_) * n_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n_) throw SizeMismatch("matrix rows must form a square");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int size() const { return n_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = static_cast<U>((*this)(i, j));
    return m;
  }

  /// Entrywise absolute value.
  Matrix abs() const {
    Matrix m = *this;
    for (auto& x : m.a_)
      if (x < 0) x = -x;
    return m;
  }

  Matrix transpose() const {
    Matrix m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  /// Drops row r and column c.
  Matrix minor(int r, int c) const {
    Matrix m(n_ - 1);
    for (int i = 0, ii = 0; i < n_; ++i) {
      if (i == r) continue;
      for (int j = 0, jj = 0; j < n_; ++j) {
        if (j == c) continue;
        m(ii, jj++) = (*this)(i, j);
      }
      ++ii;
    }
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < n_; ++i) {
      os << (i ? ", [" : "[");
      for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  int n_ = 0;
  std::vector<T> a_;
};

using SignedMatrix = Matrix<Integer>;
using SmallMatrix = Matrix<int64_t>;

/// Fraction-free Gaussian elimination (Bareiss); every division is exact.
template <class T>
T det(const Matrix<T>& m) {
  const int n = m.size();
  if (n == 0) return T(1);
  Matrix<T> a = m;
  T prev(1);
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      int r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return T(0);
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  T d = a(n - 1, n - 1);
  return negate ? T(-d) : d;
}

/// Ryser's inclusion-exclusion formula, walking column subsets in Gray-code
/// order so each step updates the row sums by a single column.
template <class T>
T permanent(const Matrix<T>& m, int limit = Limits{}.permanent_size) {
  const int n = m.size();
  if (n == 0) return T(1);
  if (n > limit || n > 62)
    throw SizeLimitExceeded("permanent of a " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix exceeds the size limit " + std::to_string(limit));
  std::vector<T> rows(n, T(0));
  T total(0);
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t k = 1; k < count; ++k) {
    const int j = std::countr_zero(k);
    const uint64_t gray = k ^ (k >> 1);
    const bool added = (gray >> j) & 1;
    for (int i = 0; i < n; ++i) {
      if (added)
        rows[i] += m(i, j);
      else
        rows[i] -= m(i, j);
    }
    T prod(1);
    for (int i = 0; i < n && prod != 0; ++i) prod *= rows[i];
    if ((n - std::popcount(gray)) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

/// True iff every nonzero term of the permutation expansion has one sign.
template <class T>
bool is_polya(const Matrix<T>& m, int limit = Limits{}.permanent_size) {
  T d = det(m);
  if (d < 0) d = -d;
  return d == permanent(m.abs(), limit);
}

/// True iff |p_ij| >= n_ij everywhere. N must be nonnegative.
template <class T>
bool dominates(const Matrix<T>& p, const Matrix<T>& n) {
  if (p.size() != n.size()) throw SizeMismatch("dominates: matrices differ in size");
  bool ok = true;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (n(i, j) < 0) throw PreconditionViolated("dominates: N has a negative entry");
      T a = p(i, j) < 0 ? T(-p(i, j)) : p(i, j);
      if (a < n(i, j)) ok = false;
    }
  return ok;
}

/// Smith normal form data: U * M * V = diag(invariants) with U unimodular.
/// Only U is kept; it is what maps vectors into coker(M) coordinates.
struct SmithForm {
  std::vector<Integer> invariants;  // d_1 | d_2 | ... ; zeros trail
  SignedMatrix left;                // U
};

inline SmithForm smith_decompose(const SignedMatrix& m) {
  const int n = m.size();
  SignedMatrix a = m;
  SignedMatrix u = SignedMatrix::identity(n);
  auto swap_rows = [&](int r, int s) {
    if (r == s) return;
    for (int j = 0; j < n; ++j) {
      std::swap(a(r, j), a(s, j));
      std::swap(u(r, j), u(s, j));
    }
  };
  auto swap_cols = [&](int c, int d) {
    if (c == d) return;
    for (int i = 0; i < n; ++i) std::swap(a(i, c), a(i, d));
  };
  // row r -= q * row s
  auto sub_row = [&](int r, int s, const Integer& q) {
    for (int j = 0; j < n; ++j) {
      a(r, j) -= q * a(s, j);
      u(r, j) -= q * u(s, j);
    }
  };
  auto sub_col = [&](int c, int d, const Integer& q) {
    for (int i = 0; i < n; ++i) a(i, c) -= q * a(i, d);
  };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block; ties go to the
      // lowest row, then the lowest column.
      int pr = -1, pc = -1;
      Integer best;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = heegaard::abs(a(i, j));
          if (pr < 0 || v < best) {
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (pr < 0) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        sub_row(i, t, Integer(a(i, t) / a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        sub_col(j, t, Integer(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < n && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      // Pull a non-multiple into row t; the next pass shrinks the pivot.
      for (int j = 0; j < n; ++j) {
        a(t, j) += a(bad, j);
        u(t, j) += u(bad, j);
      }
    }
    if (a(t, t) < 0) {
      for (int j = 0; j < n; ++j) {
        a(t, j) = -a(t, j);
        u(t, j) = -u(t, j);
      }
    }
  }
  SmithForm f;
  f.left = std::move(u);
  for (int i = 0; i < n; ++i) f.invariants.push_back(a(i, i));
  return f;
}

/// Invariant factors of coker(M).
inline std::vector<Integer> smith_invariants(const SignedMatrix& m) {
  return smith_decompose(m).invariants;
}

/// The factors different from 1: the cyclic summands of coker(M).
inline std::vector<Integer> homology_factors(const SignedMatrix& m) {
  std::vector<Integer> out;
  for (auto& d : smith_invariants(m))
    if (d != 1) out.push_back(d);
  return out;
}

}  // namespace heegaard
