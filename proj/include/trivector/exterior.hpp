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
 * @file exterior.hpp
 * @brief Sparse homogeneous elements of the exterior algebra of k^n, n <= 16.
 *
 * A basis monomial e_S is identified with the bitmask of S (bit i is the
 * 0-based index i; text formats are 1-based). Conventions:
 *
 *  - e_S ^ e_T = (-1)^{#{(s,t) in S x T : s > t}} e_{S u T} when S, T are
 *    disjoint, 0 otherwise;
 *  - contraction removes the covector from the LEFT:
 *    i_{e_i*}(e_S) = (-1)^{#{s in S : s < i}} e_{S \ i};
 *  - g(x, y, z) = i_z i_y i_x g.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/linalg.hpp"
#include "trivector/scalars.hpp"

namespace trivector {

using Subset = std::uint16_t;

inline constexpr int kMaxDim = 16;

inline int subset_size(Subset s) { return std::popcount(s); }

/// Parity of #{(s, t) in S x T : s > t}.
inline bool wedge_sign_odd(Subset s, Subset t) {
  int inversions = 0;
  for (std::uint32_t it = t; it != 0; it &= it - 1) {
    const int j = std::countr_zero(it);
    inversions += std::popcount(static_cast<std::uint32_t>(s) >> (j + 1));
  }
  return (inversions & 1) != 0;
}

/// Sorted 0-based indices of a subset.
inline std::vector<int> subset_indices(Subset s) {
  std::vector<int> out;
  for (std::uint32_t it = s; it != 0; it &= it - 1)
    out.push_back(std::countr_zero(it));
  return out;
}

/// All k-subsets of {0..n-1} in lexicographic order of their sorted index
/// lists.
inline std::vector<Subset> lex_subsets(int n, int k) {
  std::vector<Subset> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n || k < 0) return out;
  for (;;) {
    Subset s = 0;
    for (int i : idx) s |= static_cast<Subset>(1u << i);
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Lexicographic comparison of two subsets of equal size.
inline bool lex_less(Subset a, Subset b) {
  // the lowest differing element decides
  const std::uint32_t diff = static_cast<std::uint32_t>(a ^ b);
  if (diff == 0) return false;
  const int low = std::countr_zero(diff);
  return ((a >> low) & 1u) != 0;
}

template <Field K>
class Multivector {
 public:
  using Elem = typename K::Elem;
  using Terms = std::map<Subset, Elem>;

  Multivector(K field, int n, int k) : field_(field), n_(n), k_(k) {
    if (n < 0 || n > kMaxDim) throw InvalidInput("dimension out of range");
    if (k < 0 || k > n) throw InvalidInput("degree out of range");
  }

  /// coeff * e_{i1} ^ ... ^ e_{ik} for 0-based indices in any order.
  static Multivector monomial(K field, int n, std::initializer_list<int> idx,
                              std::int64_t coeff = 1) {
    return monomial(field, n, std::vector<int>(idx), field.from_int(coeff));
  }

  static Multivector monomial(K field, int n, const std::vector<int>& idx,
                              const Elem& coeff) {
    Multivector out(field, n, static_cast<int>(idx.size()));
    Subset s = 0;
    bool odd = false;
    for (int i : idx) {
      if (i < 0 || i >= n) throw InvalidInput("index out of range");
      const Subset bit = static_cast<Subset>(1u << i);
      if (s & bit) return out;
      odd ^= wedge_sign_odd(s, bit);
      s |= bit;
    }
    out.add_term(s, odd ? -coeff : coeff);
    return out;
  }

  /// Degree-1 element with the given coordinates.
  static Multivector vector(K field, std::span<const Elem> coords) {
    Multivector out(field, static_cast<int>(coords.size()), 1);
    for (std::size_t i = 0; i < coords.size(); ++i)
      out.add_term(static_cast<Subset>(1u << i), coords[i]);
    return out;
  }

  static Multivector scalar(K field, int n, const Elem& c) {
    Multivector out(field, n, 0);
    out.add_term(0, c);
    return out;
  }

  const K& field() const { return field_; }
  int dim() const { return n_; }
  int degree() const { return k_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Elem coeff(Subset s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Coefficient of e_{i1 ... ik}, 0-based indices, antisymmetric in them.
  Elem coeff(std::initializer_list<int> idx) const {
    const auto m = monomial(field_, n_, std::vector<int>(idx), field_.one());
    if (m.is_zero()) return field_.zero();
    const auto& [s, sign] = *m.terms_.begin();
    return coeff(s) * sign;
  }

  /// Accumulates c into the coefficient of e_s, keeping the form canonical.
  void add_term(Subset s, const Elem& c) {
    if (subset_size(s) != k_ || (n_ < 16 && (s >> n_) != 0)) {
      throw InvalidInput("subset does not match degree/dimension");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Terms ordered lexicographically by their sorted index lists.
  std::vector<std::pair<Subset, Elem>> lex_terms() const {
    std::vector<std::pair<Subset, Elem>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return lex_less(a.first, b.first);
    });
    return out;
  }

  Multivector operator-() const {
    Multivector out = *this;
    for (auto& [s, c] : out.terms_) c = -c;
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) { return *this += -o; }

  friend Multivector operator+(Multivector a, const Multivector& b) {
    return a += b;
  }
  friend Multivector operator-(Multivector a, const Multivector& b) {
    return a -= b;
  }
  friend Multivector operator*(const Elem& s, const Multivector& a) {
    Multivector out(a.field_, a.n_, a.k_);
    if (s.is_zero()) return out;
    for (const auto& [t, c] : a.terms_) out.terms_.emplace(t, s * c);
    return out;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.k_ == b.k_ &&
           a.terms_ == b.terms_;
  }

  void check_compatible(const Multivector& o) const {
    if (!(field_ == o.field_) || n_ != o.n_ || k_ != o.k_) {
      throw SpecMismatch("multivectors of different field/dimension/degree");
    }
  }

 private:
  K field_;
  int n_;
  int k_;
  Terms terms_;
};

/// Element of the dual space, coordinates against e_1*, ..., e_n*.
template <Field K>
class Covector {
 public:
  using Elem = typename K::Elem;

  Covector(K field, std::vector<Elem> coords)
      : field_(field), coords_(std::move(coords)) {
    if (coords_.size() > kMaxDim) throw InvalidInput("covector too long");
  }

  static Covector basis(K field, int n, int i) {
    std::vector<Elem> c(n, field.zero());
    c.at(i) = field.one();
    return Covector(field, std::move(c));
  }

  const K& field() const { return field_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const Elem& operator[](int i) const { return coords_[i]; }
  const std::vector<Elem>& coords() const { return coords_; }
  bool is_zero() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Covector&, const Covector&) = default;

 private:
  K field_;
  std::vector<Elem> coords_;
};

template <Field K>
Multivector<K> wedge(const Multivector<K>& a, const Multivector<K>& b) {
  if (!(a.field() == b.field()) || a.dim() != b.dim()) {
    throw SpecMismatch("wedge of incompatible multivectors");
  }
  if (a.degree() + b.degree() > a.dim()) {
    throw InvalidInput("wedge degree exceeds dimension");
  }
  Multivector<K> out(a.field(), a.dim(), a.degree() + b.degree());
  for (const auto& [s, cs] : a.terms()) {
    for (const auto& [t, ct] : b.terms()) {
      if (s & t) continue;
      const auto c = cs * ct;
      out.add_term(static_cast<Subset>(s | t), wedge_sign_odd(s, t) ? -c : c);
    }
  }
  return out;
}

template <Field K>
Multivector<K> contract(const Covector<K>& x, const Multivector<K>& a) {
  if (!(x.field() == a.field()) || x.dim() != a.dim()) {
    throw SpecMismatch("contraction of incompatible operands");
  }
  if (a.degree() < 1) throw InvalidInput("contraction of a scalar");
  Multivector<K> out(a.field(), a.dim(), a.degree() - 1);
  for (const auto& [s, c] : a.terms()) {
    for (std::uint32_t it = s; it != 0; it &= it - 1) {
      const int i = std::countr_zero(it);
      if (x[i].is_zero()) continue;
      const int before = std::popcount(static_cast<std::uint32_t>(s) &
                                       ((1u << i) - 1u));
      const auto v = x[i] * c;
      out.add_term(static_cast<Subset>(s & ~(1u << i)), before % 2 ? -v : v);
    }
  }
  return out;
}

/// g(x, y, z) = i_z i_y i_x g, i.e. the sum over terms of g of the
/// coefficient times the 3x3 minor of the rows x, y, z.
template <Field K>
typename K::Elem trilinear_eval(const Multivector<K>& g, const Covector<K>& x,
                                const Covector<K>& y, const Covector<K>& z) {
  if (g.degree() != 3) throw InvalidInput("trilinear_eval needs degree 3");
  for (const auto* c : {&x, &y, &z}) {
    if (!(c->field() == g.field()) || c->dim() != g.dim())
      throw SpecMismatch("trilinear_eval operands differ");
  }
  auto acc = g.field().zero();
  for (const auto& [s, c] : g.terms()) {
    const auto idx = subset_indices(s);
    const int a = idx[0], b = idx[1], d = idx[2];
    const auto minor = x[a] * (y[b] * z[d] - y[d] * z[b]) -
                       x[b] * (y[a] * z[d] - y[d] * z[a]) +
                       x[d] * (y[a] * z[b] - y[b] * z[a]);
    acc += c * minor;
  }
  return acc;
}

/// The characteristic-2 squaring map: Q(sum c_S e_S) = sum_{S<T} c_S c_T
/// e_S ^ e_T. Vanishes on pure tensors and polarizes to the wedge product.
template <Field K>
Multivector<K> qsquare(const Multivector<K>& a) {
  if (a.field().characteristic() != 2) {
    throw UnsupportedCharacteristic("Q is defined in characteristic 2 only");
  }
  if (2 * a.degree() > a.dim()) throw InvalidInput("Q degree exceeds dim");
  Multivector<K> out(a.field(), a.dim(), 2 * a.degree());
  const auto& t = a.terms();
  for (auto i = t.begin(); i != t.end(); ++i) {
    for (auto j = std::next(i); j != t.end(); ++j) {
      if (i->first & j->first) continue;
      out.add_term(static_cast<Subset>(i->first | j->first),
                   i->second * j->second);  // sign is irrelevant in char 2
    }
  }
  return out;
}

/// For b of degree n-2, the skew matrix N with e_j ^ e_k ^ b = N_jk vol,
/// vol = e_1 ^ ... ^ e_n.
template <Field K>
SkewMatrix<K> volume_pair_to_skew(const Multivector<K>& b) {
  const int n = b.dim();
  if (b.degree() != n - 2) throw InvalidInput("expected degree n-2");
  SkewMatrix<K> out(b.field(), n);
  const Subset full = static_cast<Subset>((1u << n) - 1u);
  for (const auto& [s, c] : b.terms()) {
    const Subset comp = static_cast<Subset>(full & ~s);
    const auto idx = subset_indices(comp);
    // e_j ^ e_k ^ e_S: e_j ^ e_k is already ordered (j < k)
    const bool odd = wedge_sign_odd(comp, s);
    const auto v = odd ? -c : c;
    out.set(idx[0], idx[1], out(idx[0], idx[1]) + v);
  }
  return out;
}

/// For b of degree n-k, the degree-k element delta with
/// e_T ^ b = delta_T vol for every k-subset T.
template <Field K>
Multivector<K> complement_dual(const Multivector<K>& b) {
  const int n = b.dim();
  Multivector<K> out(b.field(), n, n - b.degree());
  const Subset full = static_cast<Subset>((1u << n) - 1u);
  for (const auto& [s, c] : b.terms()) {
    const Subset comp = static_cast<Subset>(full & ~s);
    out.add_term(comp, wedge_sign_odd(comp, s) ? -c : c);
  }
  return out;
}

/// Degree-6 element of the exterior algebra of k^9 viewed as a trivector on
/// the dual space through the volume form.
template <Field K>
Multivector<K> dualize_6_to_3(const Multivector<K>& b) {
  if (b.dim() != 9 || b.degree() != 6) {
    throw InvalidInput("dualize_6_to_3 expects n=9, degree 6");
  }
  return complement_dual(b);
}

/// Image of g under the induced map of a linear map A: k^n -> k^m (an m x n
/// matrix acting on column vectors), i.e. e_{s1} ^ ... ^ e_{sk} maps to
/// A e_{s1} ^ ... ^ A e_{sk}.
template <Field K>
Multivector<K> apply_linear(const Matrix<K>& a, const Multivector<K>& g) {
  if (a.cols() != g.dim()) throw SpecMismatch("linear map shape");
  const int m = a.rows();
  const K& field = g.field();
  std::vector<Multivector<K>> images;
  images.reserve(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    Multivector<K> col(field, m, 1);
    for (int i = 0; i < m; ++i) col.add_term(static_cast<Subset>(1u << i), a(i, j));
    images.push_back(std::move(col));
  }
  Multivector<K> out(field, m, g.degree());
  for (const auto& [s, c] : g.terms()) {
    auto acc = Multivector<K>::scalar(field, m, c);
    for (int j : subset_indices(s)) {
      acc = wedge(acc, images[j]);
      if (acc.is_zero()) break;
    }
    if (!acc.is_zero()) out += acc;
  }
  return out;
}

/// The quotient map k^n -> k^n / <u> in the basis of the reduced-echelon
/// completion: u is scaled so its first nonzero coordinate (the pivot) is 1,
/// completed by the standard basis vectors away from the pivot, and the
/// quotient is coordinatized by those n-1 vectors in their original order.
/// Concretely e_pivot maps to -(sum_{j != pivot} u_j e_j) and e_j (j != pivot)
/// maps to its own coordinate.
template <Field K>
Matrix<K> quotient_map(std::span<const typename K::Elem> u, const K& field) {
  const int n = static_cast<int>(u.size());
  int pivot = -1;
  for (int i = 0; i < n; ++i) {
    if (!u[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) throw InvalidInput("quotient by the zero vector");
  const auto scale = u[pivot].inv();
  Matrix<K> q(field, n - 1, n);
  for (int j = 0, r = 0; j < n; ++j) {
    if (j == pivot) continue;
    q(r, j) = field.one();
    q(r, pivot) = -(u[j] * scale);
    ++r;
  }
  return q;
}

/// Projection of g to the exterior power of k^n / <u>.
template <Field K>
Multivector<K> quotient_project(const Multivector<K>& g,
                                std::span<const typename K::Elem> u) {
  if (static_cast<int>(u.size()) != g.dim()) {
    throw SpecMismatch("quotient vector length");
  }
  if (g.degree() > g.dim() - 1) throw InvalidInput("degree too large");
  return apply_linear(quotient_map(u, g.field()), g);
}

}  // namespace trivector
