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
 * @file subspaces.hpp
 * @brief Enumeration of points of projective space and of k-dimensional
 * subspaces of F_q^n by reduced row echelon representatives.
 *
 * Subspace order: pivot column sets in lexicographic order; within one pivot
 * set, the free entries of row 1, then row 2, ... each read as a base-q
 * number whose most significant digit is the leftmost free column, with
 * row 1 varying slowest.
 *
 * Projective point order ("sweep order"): representatives whose first
 * nonzero coordinate is 1, grouped by the position of that coordinate
 * (position 1 first), the remaining tail read as a base-q number with the
 * leftmost tail coordinate most significant.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/exterior.hpp"

namespace trivector {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Number of k-dimensional subspaces of F_q^n.
inline std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

/// Pivot columns and the free columns of each row of an echelon shape.
struct EchelonShape {
  std::vector<int> pivots;
  std::vector<std::vector<int>> free_cols;

  EchelonShape(int n, Subset pivot_set) : pivots(subset_indices(pivot_set)) {
    for (int p : pivots) {
      std::vector<int> f;
      for (int c = p + 1; c < n; ++c)
        if (!((pivot_set >> c) & 1u)) f.push_back(c);
      free_cols.push_back(std::move(f));
    }
  }
};

/// Writes digit counter `value` (base q, most significant = leftmost free
/// column) into a row with 1 at the pivot.
inline void fill_echelon_row(const EchelonShape& shape, int r,
                             std::uint64_t value, std::uint32_t q,
                             std::vector<std::uint32_t>& row) {
  std::fill(row.begin(), row.end(), 0u);
  row[shape.pivots[r]] = 1;
  const auto& f = shape.free_cols[r];
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    row[f[i]] = static_cast<std::uint32_t>(value % q);
    value /= q;
  }
}

/// Calls fn(rows) for every k-dimensional subspace of F_q^n in echelon
/// order; stops early when fn returns false.
inline void for_each_subspace(
    int n, int k, std::uint32_t q,
    const std::function<bool(const std::vector<std::vector<std::uint32_t>>&)>&
        fn) {
  std::vector<std::vector<std::uint32_t>> rows(k,
                                               std::vector<std::uint32_t>(n));
  for (Subset piv : lex_subsets(n, k)) {
    const EchelonShape shape(n, piv);
    std::vector<std::uint64_t> limits(k), counter(k, 0);
    for (int r = 0; r < k; ++r)
      limits[r] = ipow(q, static_cast<int>(shape.free_cols[r].size()));
    for (;;) {
      for (int r = 0; r < k; ++r) fill_echelon_row(shape, r, counter[r], q, rows[r]);
      if (!fn(rows)) return;
      int r = k - 1;
      while (r >= 0 && ++counter[r] == limits[r]) counter[r--] = 0;
      if (r < 0) break;
    }
  }
}

/// Projective space P^{n-1}(F_q) in sweep order.
class ProjectivePoints {
 public:
  ProjectivePoints(int n, std::uint32_t q) : n_(n), q_(q) {
    if (n < 1 || n > kMaxDim) throw InvalidInput("bad projective dimension");
    std::uint64_t total = 0;
    for (int pos = 0; pos < n; ++pos) {
      block_start_.push_back(total);
      total += ipow(q, n - 1 - pos);
    }
    count_ = total;
  }

  int dim() const { return n_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t count() const { return count_; }

  /// Coordinates (residues in [0, q)) of the point with the given index.
  void point(std::uint64_t index, std::vector<std::uint32_t>& out) const {
    if (index >= count_) throw InvalidInput("point index out of range");
    int pos = n_ - 1;
    while (block_start_[pos] > index) --pos;
    std::uint64_t tail = index - block_start_[pos];
    out.assign(n_, 0u);
    out[pos] = 1;
    for (int i = n_ - 1; i > pos; --i) {
      out[i] = static_cast<std::uint32_t>(tail % q_);
      tail /= q_;
    }
  }

  /// Index of a normalized representative (first nonzero coordinate 1).
  std::uint64_t index_of(const std::vector<std::uint32_t>& x) const {
    int pos = 0;
    while (pos < n_ && x[pos] == 0) ++pos;
    if (pos == n_ || x[pos] != 1) throw InvalidInput("point not normalized");
    std::uint64_t tail = 0;
    for (int i = pos + 1; i < n_; ++i) tail = tail * q_ + x[i];
    return block_start_[pos] + tail;
  }

 private:
  int n_;
  std::uint32_t q_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> block_start_;
};

}  // namespace trivector
