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
 * @file w38.hpp
 * @brief Trivectors in dimension 8: the trace trilinear form on pgl_3,
 * infinitesimal stabilizers, the instability witness search, destabilizing
 * one-parameter subgroups, and the characteristic-2 hyperdiscriminant.
 *
 * A trivector w is unstable exactly when some 3-dimensional V3 of covectors
 * satisfies w(v1, v2, -) = 0 for all v1, v2 in V3. Only this set-theoretic
 * test is available in odd characteristic; in characteristic 2 the
 * hyperdiscriminant is the square of Pf(Q(w)) and `hyperdisc2` returns
 * that Pfaffian.
 */

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/exterior.hpp"
#include "trivector/linalg.hpp"
#include "trivector/scalars.hpp"
#include "trivector/subspaces.hpp"

namespace trivector {

// ---------------------------------------------------------------------------
// Trace form

/// An element of pgl_n through one of its lifts to gl_n. Two elements are
/// equal when their lifts differ by a scalar matrix.
template <Field K>
struct PglElement {
  Matrix<K> lift;

  friend bool operator==(const PglElement& a, const PglElement& b) {
    const auto d = a.lift - b.lift;
    const int n = d.rows();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j && !d(i, j).is_zero()) return false;
        if (i == j && !(d(i, i) == d(0, 0))) return false;
      }
    return true;
  }
};

template <Field K>
typename K::Elem trace(const Matrix<K>& m) {
  auto t = m.field().zero();
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// tr(X1 X2 X3) - tr(X2 X1 X3); independent of the lifts.
template <Field K>
typename K::Elem trace_form_value(const Matrix<K>& x1, const Matrix<K>& x2,
                                  const Matrix<K>& x3) {
  return trace(x1 * x2 * x3) - trace(x2 * x1 * x3);
}

template <Field K>
struct TraceForm {
  /// Lifts E12, E13, E21, E23, E31, E32, H1 = E11 - E22, H2 = E22 - E33.
  std::vector<Matrix<K>> basis;
  /// alpha(b_a, b_b, b_c) as the coefficient of e_{abc}, a < b < c.
  Multivector<K> coeffs;

  typename K::Elem operator()(const Matrix<K>& x1, const Matrix<K>& x2,
                              const Matrix<K>& x3) const {
    return trace_form_value(x1, x2, x3);
  }
};

template <Field K>
std::vector<Matrix<K>> pgl3_basis(const K& field) {
  auto unit = [&](int i, int j) {
    Matrix<K> m(field, 3, 3);
    m(i, j) = field.one();
    return m;
  };
  std::vector<Matrix<K>> b = {unit(0, 1), unit(0, 2), unit(1, 0),
                              unit(1, 2), unit(2, 0), unit(2, 1)};
  b.push_back(unit(0, 0) - unit(1, 1));
  b.push_back(unit(1, 1) - unit(2, 2));
  return b;
}

/// The trace form on pgl_n in the fixed basis; only n = 3 is supported.
template <Field K>
TraceForm<K> trace_form(int n, const K& field) {
  if (n != 3) throw InvalidInput("trace_form supports n = 3 only");
  auto basis = pgl3_basis(field);
  Multivector<K> coeffs(field, 8, 3);
  for (Subset s : lex_subsets(8, 3)) {
    const auto idx = subset_indices(s);
    coeffs.add_term(s, trace_form_value(basis[idx[0]], basis[idx[1]],
                                        basis[idx[2]]));
  }
  return {std::move(basis), std::move(coeffs)};
}

/// Rank of the alternating form alpha(X, -, -) on pgl_3; 2n - 2 = 4 exactly
/// when X has a rank-1 lift.
template <Field K>
int skew_form_rank(const TraceForm<K>& alpha, const PglElement<K>& x) {
  const K& field = x.lift.field();
  Matrix<K> b(field, 8, 8);
  for (int a = 0; a < 8; ++a)
    for (int c = a + 1; c < 8; ++c) {
      b(a, c) = alpha(x.lift, alpha.basis[a], alpha.basis[c]);
      b(c, a) = -b(a, c);
    }
  return rank(std::move(b));
}

/// A rank-1 lift X - lambda I of a 3x3 lift X, if one exists.
///
/// For a rank-1 matrix R and distinct i, j, k the 2x2 minor on rows {i, j}
/// and columns {i, k} gives R_ii R_jk = R_ik R_ji, which determines
/// lambda = X_ii - R_ii whenever X_jk != 0. If all off-diagonal entries
/// vanish, lambda must be a repeated diagonal entry.
template <Field K>
std::optional<Matrix<K>> rank1_lift(const Matrix<K>& x) {
  const K& field = x.field();
  std::vector<typename K::Elem> candidates;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int k = 3 - i - j;
      if (j == i || k == i || k == j) continue;
      if (x(j, k).is_zero()) continue;
      candidates.push_back(x(i, i) - x(i, k) * x(j, i) / x(j, k));
    }
  }
  for (int i = 0; i < 3; ++i) candidates.push_back(x(i, i));
  for (const auto& lambda : candidates) {
    auto r = x - lambda * Matrix<K>::identity(field, 3);
    if (rank(r) == 1) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Infinitesimal stabilizer

/// E_ij . w for the derivation action of gl_n (E_ij e_j = e_i).
template <Field K>
Multivector<K> elementary_action(const Multivector<K>& w, int i, int j) {
  Multivector<K> out(w.field(), w.dim(), w.degree());
  for (const auto& [s, c] : w.terms()) {
    if (!((s >> j) & 1u)) continue;
    if (i == j) {
      out.add_term(s, c);
      continue;
    }
    if ((s >> i) & 1u) continue;
    // replace e_j by e_i in place, then sort e_i into position
    const Subset rest = static_cast<Subset>(s & ~(1u << j));
    const bool odd = wedge_sign_odd(rest, static_cast<Subset>(1u << j)) ^
                     wedge_sign_odd(rest, static_cast<Subset>(1u << i));
    out.add_term(static_cast<Subset>(rest | (1u << i)), odd ? -c : c);
  }
  return out;
}

/// dim { g in gl_n : g . w = 0 } = n^2 - rank of g -> g . w.
template <Field K>
int stabilizer_dim(const Multivector<K>& w) {
  const int n = w.dim();
  const auto rows = lex_subsets(n, w.degree());
  std::vector<int> row_of(1u << n, -1);
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
  Matrix<K> m(w.field(), static_cast<int>(rows.size()), n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto img = elementary_action(w, i, j);
      for (const auto& [s, c] : img.terms()) m(row_of[s], i * n + j) = c;
    }
  return n * n - rank(std::move(m));
}

// ---------------------------------------------------------------------------
// Instability witnesses

/// i_{v2} i_{v1} w as a vector.
template <Field K>
Multivector<K> double_contract(const Multivector<K>& w, const Covector<K>& v1,
                               const Covector<K>& v2) {
  return contract(v2, contract(v1, w));
}

/// Rows of `v` as covectors.
template <Field K>
std::vector<Covector<K>> row_covectors(const Matrix<K>& v) {
  std::vector<Covector<K>> out;
  for (int r = 0; r < v.rows(); ++r) out.emplace_back(v.field(), v.row(r));
  return out;
}

/// True iff w(v_a, v_b, -) = 0 for all pairs of rows of v3 (a 3 x n matrix
/// of full rank).
template <Field K>
bool check_witness(const Multivector<K>& w, const Matrix<K>& v3) {
  if (w.degree() != 3) throw InvalidInput("check_witness needs a trivector");
  if (v3.rows() != 3 || v3.cols() != w.dim()) {
    throw InvalidInput("witness must be 3 x n");
  }
  if (rank(v3) != 3) throw InvalidInput("witness rows are not independent");
  const auto v = row_covectors(v3);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (!double_contract(w, v[a], v[b]).is_zero()) return false;
  return true;
}

template <Field K>
struct StabilityVerdict {
  enum class Status { unstable, no_witness_found };

  Status status;
  std::optional<Matrix<K>> witness;  // 3 x n, reduced echelon form

  bool unstable() const { return status == Status::unstable; }
};

namespace detail {

/// Full alternating tensor of w with entries reduced to [0, q).
inline std::vector<std::uint32_t> dense_tensor(const Multivector<PrimeField>& w) {
  const int n = w.dim();
  const std::uint32_t q = w.field().modulus();
  std::vector<std::uint32_t> t(static_cast<std::size_t>(n) * n * n, 0);
  auto at = [&](int i, int j, int k) -> std::uint32_t& {
    return t[(static_cast<std::size_t>(i) * n + j) * n + k];
  };
  for (const auto& [s, c] : w.terms()) {
    const auto idx = subset_indices(s);
    const std::uint32_t v = c.value(), nv = (q - v) % q;
    const int a = idx[0], b = idx[1], d = idx[2];
    at(a, b, d) = v;
    at(b, d, a) = v;
    at(d, a, b) = v;
    at(b, a, d) = nv;
    at(a, d, b) = nv;
    at(d, b, a) = nv;
  }
  return t;
}

/// Characteristic 2: vectors are bitmasks, w(v, e_j, -) is a row of masks.
class Gf2Contractor {
 public:
  using Vec = std::uint32_t;
  using Partial = std::array<std::uint32_t, kMaxDim>;

  explicit Gf2Contractor(const Multivector<PrimeField>& w) : n_(w.dim()) {
    const auto t = dense_tensor(w);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        std::uint32_t mask = 0;
        for (int k = 0; k < n_; ++k)
          if (t[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]) mask |= 1u << k;
        slices_[i][j] = mask;
      }
  }

  Vec make(const std::vector<std::uint32_t>& row) const {
    Vec v = 0;
    for (int i = 0; i < n_; ++i)
      if (row[i]) v |= 1u << i;
    return v;
  }

  Partial partial(Vec v) const {
    Partial m{};
    for (std::uint32_t it = v; it != 0; it &= it - 1) {
      const int i = std::countr_zero(it);
      for (int j = 0; j < n_; ++j) m[j] ^= slices_[i][j];
    }
    return m;
  }

  bool kills(const Partial& m, Vec v) const {
    std::uint32_t acc = 0;
    for (std::uint32_t it = v; it != 0; it &= it - 1)
      acc ^= m[std::countr_zero(it)];
    return acc == 0;
  }

 private:
  int n_;
  std::array<std::array<std::uint32_t, kMaxDim>, kMaxDim> slices_{};
};

/// Any prime q: dense integer arithmetic modulo q.
class DenseContractor {
 public:
  using Vec = std::vector<std::uint32_t>;
  using Partial = std::vector<std::uint32_t>;  // n x n, row j = w(v, e_j, -)

  explicit DenseContractor(const Multivector<PrimeField>& w)
      : n_(w.dim()), q_(w.field().modulus()), t_(dense_tensor(w)) {}

  Vec make(const std::vector<std::uint32_t>& row) const { return row; }

  Partial partial(const Vec& v) const {
    Partial m(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      for (int jk = 0; jk < n_ * n_; ++jk)
        m[jk] = static_cast<std::uint32_t>(
            (m[jk] + static_cast<std::uint64_t>(v[i]) *
                         t_[static_cast<std::size_t>(i) * n_ * n_ + jk]) % q_);
    }
    return m;
  }

  bool kills(const Partial& m, const Vec& v) const {
    for (int k = 0; k < n_; ++k) {
      std::uint64_t acc = 0;
      for (int j = 0; j < n_; ++j)
        if (v[j]) acc += static_cast<std::uint64_t>(v[j]) * m[j * n_ + k];
      if (acc % q_ != 0) return false;
    }
    return true;
  }

 private:
  int n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> t_;
};

/// First witness (in echelon order) inside one pivot set, as counters.
template <class Contractor>
std::optional<std::array<std::uint64_t, 3>> search_pivot_set(
    const Contractor& con, int n, std::uint32_t q, Subset pivots) {
  const EchelonShape shape(n, pivots);
  std::array<std::uint64_t, 3> limits;
  for (int r = 0; r < 3; ++r)
    limits[r] = ipow(q, static_cast<int>(shape.free_cols[r].size()));
  std::vector<std::uint32_t> row(n);
  for (std::uint64_t c1 = 0; c1 < limits[0]; ++c1) {
    fill_echelon_row(shape, 0, c1, q, row);
    const auto v1 = con.make(row);
    const auto m1 = con.partial(v1);
    for (std::uint64_t c2 = 0; c2 < limits[1]; ++c2) {
      fill_echelon_row(shape, 1, c2, q, row);
      const auto v2 = con.make(row);
      if (!con.kills(m1, v2)) continue;
      const auto m2 = con.partial(v2);
      for (std::uint64_t c3 = 0; c3 < limits[2]; ++c3) {
        fill_echelon_row(shape, 2, c3, q, row);
        const auto v3 = con.make(row);
        if (con.kills(m1, v3) && con.kills(m2, v3)) {
          return std::array<std::uint64_t, 3>{c1, c2, c3};
        }
      }
    }
  }
  return std::nullopt;
}

template <class Contractor>
StabilityVerdict<PrimeField> bruteforce(const Multivector<PrimeField>& w,
                                        unsigned threads) {
  const int n = w.dim();
  const std::uint32_t q = w.field().modulus();
  const Contractor con(w);
  const auto pivot_sets = lex_subsets(n, 3);
  const int total = static_cast<int>(pivot_sets.size());

  std::vector<std::optional<std::array<std::uint64_t, 3>>> found(total);
  std::atomic<int> next{0};
  std::atomic<int> best{total};
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= total || t > best.load()) return;
      found[t] = search_pivot_set(con, n, q, pivot_sets[t]);
      if (found[t]) {
        int cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const int b = best.load();
  if (b == total) {
    return {StabilityVerdict<PrimeField>::Status::no_witness_found, std::nullopt};
  }
  const EchelonShape shape(n, pivot_sets[b]);
  Matrix<PrimeField> v(w.field(), 3, n);
  std::vector<std::uint32_t> row(n);
  for (int r = 0; r < 3; ++r) {
    fill_echelon_row(shape, r, (*found[b])[r], q, row);
    for (int c = 0; c < n; ++c) v(r, c) = Fp::raw(row[c], q);
  }
  return {StabilityVerdict<PrimeField>::Status::unstable, std::move(v)};
}

}  // namespace detail

/// Exhaustive search over all 3-dimensional subspaces of covectors over
/// F_q, q in {2, 3}, for an instability witness. Returns the first witness
/// in echelon order, independent of the number of threads.
inline StabilityVerdict<PrimeField> is_unstable_bruteforce(
    const Multivector<PrimeField>& w, unsigned threads = 1) {
  const std::uint32_t q = w.field().modulus();
  if (q != 2 && q != 3) {
    throw UnsupportedCharacteristic("brute-force search supports q = 2, 3");
  }
  if (w.degree() != 3 || w.dim() < 3) {
    throw InvalidInput("brute-force search needs a trivector");
  }
  if (q == 2) return detail::bruteforce<detail::Gf2Contractor>(w, threads);
  return detail::bruteforce<detail::DenseContractor>(w, threads);
}

// ---------------------------------------------------------------------------
// One-parameter subgroups

/// Annihilator in k^n of the row space of v, as the rows of a matrix in
/// reduced echelon form.
template <Field K>
Matrix<K> annihilator(const Matrix<K>& v) {
  return Matrix<K>::from_rows(v.field(), kernel(v), v.cols());
}

/// Minimal weight of w under rho(t) = (t^3 x5, t^-5 x3) in a basis adapted
/// to the 5-dimensional subspace U (rows of u): the echelon basis of U
/// followed by the standard basis vectors at the non-pivot columns. The
/// monomial [ijk] has weight sum(+3 for an index in U, -5 otherwise); rho
/// destabilizes w iff the result is >= 1. Empty for w = 0.
template <Field K>
std::optional<int> min_1ps_weight(const Multivector<K>& w, const Matrix<K>& u) {
  constexpr int kN = 8, kU = 5;
  if (w.dim() != kN || w.degree() != 3) {
    throw InvalidInput("min_1ps_weight expects a trivector in dimension 8");
  }
  if (u.rows() != kU || u.cols() != kN || rank(u) != kU) {
    throw InvalidInput("U must be 5-dimensional");
  }
  const K& field = w.field();
  const auto e = rref(u);
  Matrix<K> basis(field, kN, kN);
  for (int r = 0; r < kU; ++r)
    for (int c = 0; c < kN; ++c) basis(c, r) = e.reduced(r, c);
  std::vector<bool> is_pivot(kN, false);
  for (int c : e.pivots) is_pivot[c] = true;
  for (int c = 0, col = kU; c < kN; ++c)
    if (!is_pivot[c]) basis(c, col++) = field.one();

  const auto adapted = apply_linear(inverse(basis), w);
  std::optional<int> best;
  for (const auto& [s, c] : adapted.terms()) {
    int weight = 0;
    for (int i : subset_indices(s)) weight += i < kU ? 3 : -5;
    if (!best || weight < *best) best = weight;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Characteristic-2 hyperdiscriminant

/// Pf(N(Q(w))) for w in the third exterior power of F_2^8, where
/// N(b)_jk is defined by e_j ^ e_k ^ b = N_jk e_1 ^ ... ^ e_8. The degree-16
/// hyperdiscriminant equals the square of this value, so it vanishes
/// exactly when w is unstable.
inline Fp hyperdisc2(const Multivector<PrimeField>& w) {
  if (w.field().characteristic() != 2) {
    throw UnsupportedCharacteristic("hyperdisc2 is defined over F_2 only");
  }
  if (w.dim() != 8 || w.degree() != 3) {
    throw InvalidInput("hyperdisc2 expects a trivector in dimension 8");
  }
  return pfaffian(volume_pair_to_skew(qsquare(w)));
}

}  // namespace trivector
