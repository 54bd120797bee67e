/*
 * Copyright 2026 The trivector Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra: echelon forms, rank, kernels,
 * determinants, and Pfaffians of skew-symmetric matrices.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/scalars.hpp"

namespace trivector {

template <Field K>
class Matrix {
 public:
  using Elem = typename K::Elem;

  Matrix(K field, int rows, int cols)
      : field_(field),
        rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, field.zero()) {
    if (rows < 0 || cols < 0) throw InvalidInput("negative matrix size");
  }

  static Matrix identity(K field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Rows given as vectors of equal length.
  static Matrix from_rows(K field, const std::vector<std::vector<Elem>>& rows,
                          int cols = -1) {
    const int c = rows.empty() ? std::max(cols, 0)
                               : static_cast<int>(rows.front().size());
    Matrix m(field, static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != c) {
        throw InvalidInput("ragged rows");
      }
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_ints(K field, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Elem>> conv;
    for (const auto& r : rows) {
      std::vector<Elem> row;
      for (long v : r) row.push_back(field.from_int(v));
      conv.push_back(std::move(row));
    }
    return from_rows(field, conv);
  }

  const K& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elem& operator()(int i, int j) { return data_[index(i, j)]; }
  const Elem& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::vector<Elem> row(int i) const {
    return {data_.begin() + index(i, 0), data_.begin() + index(i, 0) + cols_};
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw SpecMismatch("matrix product shape");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Elem& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Elem& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  std::vector<Elem> apply(std::span<const Elem> v) const {
    if (static_cast<int>(v.size()) != cols_) throw SpecMismatch("matvec shape");
    std::vector<Elem> out(rows_, field_.zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }
  void same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw SpecMismatch("matrix shapes differ");
  }

  K field_;
  int rows_;
  int cols_;
  std::vector<Elem> data_;
};

template <Field K>
struct Echelon {
  Matrix<K> reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination with the first
/// nonzero entry of each column as pivot.
template <Field K>
Echelon<K> rref(Matrix<K> m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = m(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const auto f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only; cheaper than a full rref.
template <Field K>
int rank(Matrix<K> m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = m(r, c).inv();
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      const auto f = m(i, c) * inv;
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Basis of the right kernel {v : M v = 0}, returned as the rows of a matrix
/// in reduced row echelon form, so the result is independent of how the
/// kernel was found.
template <Field K>
std::vector<std::vector<typename K::Elem>> kernel(const Matrix<K>& m) {
  const auto e = rref(m);
  const K& k = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename K::Elem>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename K::Elem> v(m.cols(), k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.reduced(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  const auto canon = rref(Matrix<K>::from_rows(k, basis));
  std::vector<std::vector<typename K::Elem>> out;
  for (std::size_t r = 0; r < canon.pivots.size(); ++r)
    out.push_back(canon.reduced.row(static_cast<int>(r)));
  return out;
}

template <Field K>
typename K::Elem det(Matrix<K> m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square");
  const K& k = m.field();
  auto d = k.one();
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return k.zero();
    if (piv != c) {
      for (int j = c; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    const auto inv = m(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const auto f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

template <Field K>
Matrix<K> inverse(const Matrix<K>& m) {
  const int n = m.rows();
  if (n != m.cols()) throw InvalidInput("inverse of non-square");
  Matrix<K> aug(m.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  const auto e = rref(std::move(aug));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
    throw DivisionByZero();
  Matrix<K> inv(m.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Pfaffians of principal submatrices, indexed by the bitmask of the kept
/// rows/columns and memoized across calls. Works over any commutative ring
/// `R` (field elements, polynomials) since it never divides:
///
///   Pf(S_I) = sum_{t >= 2} (-1)^t S_{i1,it} Pf(S_{I \ {i1,it}})
///
/// where i1 < i2 < ... enumerate I.
template <class R, class EntryFn>
class SubsetPfaffian {
 public:
  SubsetPfaffian(int m, EntryFn entry, R zero, R one)
      : m_(m), entry_(std::move(entry)), zero_(std::move(zero)),
        one_(std::move(one)) {
    if (m < 0 || m > 31) throw InvalidInput("Pfaffian size out of range");
  }

  const R& operator()(std::uint32_t subset) {
    if (auto it = memo_.find(subset); it != memo_.end()) return it->second;
    R value = compute(subset);
    return memo_.emplace(subset, std::move(value)).first->second;
  }

  const R& full() { return (*this)((1u << m_) - 1u); }

 private:
  R compute(std::uint32_t subset) {
    if (subset == 0) return one_;
    if (std::popcount(subset) % 2 == 1) return zero_;
    const int first = std::countr_zero(subset);
    const std::uint32_t rest = subset & (subset - 1);
    R acc = zero_;
    int t = 2;
    for (std::uint32_t it = rest; it != 0; it &= it - 1, ++t) {
      const int j = std::countr_zero(it);
      const R& sij = entry_(first, j);
      if (sij.is_zero()) continue;
      const R& sub = (*this)(rest & ~(1u << j));
      if (sub.is_zero()) continue;
      if (t % 2 == 0) {
        acc = acc + sij * sub;
      } else {
        acc = acc - sij * sub;
      }
    }
    return acc;
  }

  int m_;
  EntryFn entry_;
  R zero_;
  R one_;
  std::unordered_map<std::uint32_t, R> memo_;
};

template <class R, class EntryFn>
SubsetPfaffian(int, EntryFn, R, R) -> SubsetPfaffian<R, EntryFn>;

/// Square matrix with S^T = -S and zero diagonal, checked on construction.
template <Field K>
class SkewMatrix {
 public:
  using Elem = typename K::Elem;

  explicit SkewMatrix(Matrix<K> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InvalidInput("skew matrix not square");
    for (int i = 0; i < m_.rows(); ++i) {
      if (!m_(i, i).is_zero())
        throw InvalidInput("skew matrix has nonzero diagonal");
      for (int j = i + 1; j < m_.cols(); ++j)
        if (!(m_(i, j) == -m_(j, i)))
          throw InvalidInput("matrix is not skew-symmetric");
    }
  }

  /// Zero skew matrix of size m.
  SkewMatrix(K field, int m) : m_(field, m, m) {}

  /// Sets S_ij = v and S_ji = -v.
  void set(int i, int j, const Elem& v) {
    if (i == j) {
      if (!v.is_zero()) throw InvalidInput("skew matrix diagonal must be 0");
      return;
    }
    m_(i, j) = v;
    m_(j, i) = -v;
  }

  int size() const { return m_.rows(); }
  const K& field() const { return m_.field(); }
  const Elem& operator()(int i, int j) const { return m_(i, j); }
  const Matrix<K>& matrix() const { return m_; }

  /// Principal submatrix with row/column i removed.
  SkewMatrix without(int i) const {
    Matrix<K> r(field(), size() - 1, size() - 1);
    for (int a = 0, ra = 0; a < size(); ++a) {
      if (a == i) continue;
      for (int b = 0, rb = 0; b < size(); ++b) {
        if (b == i) continue;
        r(ra, rb++) = m_(a, b);
      }
      ++ra;
    }
    return SkewMatrix(std::move(r));
  }

  friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

 private:
  Matrix<K> m_;
};

/// Pfaffian; 0 for odd size, 1 for size 0.
template <Field K>
typename K::Elem pfaffian(const SkewMatrix<K>& s) {
  if (s.size() % 2 == 1) return s.field().zero();
  auto entry = [&s](int i, int j) -> const typename K::Elem& {
    return s(i, j);
  };
  SubsetPfaffian pf(s.size(), entry, s.field().zero(), s.field().one());
  return pf.full();
}

/// Kernel vector of an odd skew matrix from its principal sub-Pfaffians:
/// kappa_j = (-1)^j Pf(S without row/col j) with 0-based j. S kappa = 0
/// always, and kappa != 0 exactly when rank S = m - 1.
template <Field K>
std::vector<typename K::Elem> sub_pfaffian_kernel(const SkewMatrix<K>& s) {
  const int m = s.size();
  if (m % 2 == 0) throw InvalidInput("sub-Pfaffian kernel needs odd size");
  auto entry = [&s](int i, int j) -> const typename K::Elem& {
    return s(i, j);
  };
  SubsetPfaffian pf(m, entry, s.field().zero(), s.field().one());
  const std::uint32_t all = (1u << m) - 1u;
  std::vector<typename K::Elem> kappa;
  kappa.reserve(m);
  for (int j = 0; j < m; ++j) {
    auto v = pf(all & ~(1u << j));
    kappa.push_back(j % 2 == 0 ? v : -v);
  }
  return kappa;
}

}  // namespace trivector
