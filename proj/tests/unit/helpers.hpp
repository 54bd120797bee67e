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


// Seeded generators and slow reference implementations shared by the tests.

#pragma once

#include <algorithm>
#include <fstream>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "trivector/trivector.hpp"

namespace trivector::testing {

template <Field K>
Matrix<K> random_matrix(const K& field, int rows, int cols, Rng& rng) {
  Matrix<K> m(field, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = sample_uniform(field, rng);
  return m;
}

template <Field K>
Matrix<K> random_invertible(const K& field, int n, Rng& rng) {
  for (;;) {
    auto m = random_matrix(field, n, n, rng);
    if (!det(m).is_zero()) return m;
  }
}

template <Field K>
SkewMatrix<K> random_skew(const K& field, int m, Rng& rng) {
  SkewMatrix<K> s(field, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) s.set(i, j, sample_uniform(field, rng));
  return s;
}

/// Each basis monomial present with probability 1/density.
template <Field K>
Multivector<K> random_multivector(const K& field, int n, int k, Rng& rng,
                                  int density = 1) {
  Multivector<K> out(field, n, k);
  for (Subset s : lex_subsets(n, k))
    if (rng.below(density) == 0) out.add_term(s, sample_uniform(field, rng));
  return out;
}

template <Field K>
std::vector<typename K::Elem> random_vector(const K& field, int n, Rng& rng) {
  std::vector<typename K::Elem> v;
  for (int i = 0; i < n; ++i) v.push_back(sample_uniform(field, rng));
  return v;
}

template <Field K>
std::vector<typename K::Elem> random_nonzero_vector(const K& field, int n,
                                                    Rng& rng) {
  for (;;) {
    auto v = random_vector(field, n, rng);
    for (const auto& c : v)
      if (!c.is_zero()) return v;
  }
}

template <Field K>
Covector<K> random_covector(const K& field, int n, Rng& rng) {
  return Covector<K>(field, random_vector(field, n, rng));
}

/// Homogeneous polynomial of the given degree with about `terms` terms.
template <Field K>
MPoly<K> random_poly(const K& field, int nvars, int degree, int terms,
                     Rng& rng) {
  MPoly<K> f(field, nvars);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(nvars, 0);
    for (int d = 0; d < degree; ++d) ++e[rng.below(nvars)];
    f.add_term(Monomial::from_exponents(e), sample_uniform(field, rng));
  }
  return f;
}

/// Parity of the permutation that sorts `v` (entries distinct).
inline bool inversion_parity(std::vector<int> v) {
  bool odd = false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) odd ^= v[i] > v[j];
  return odd;
}

/// Leibniz formula.
template <Field K>
typename K::Elem det_leibniz(const Matrix<K>& m) {
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto acc = m.field().zero();
  do {
    auto term = m.field().one();
    for (int i = 0; i < n; ++i) term = term * m(i, perm[i]);
    acc += inversion_parity(perm) ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Sum over perfect matchings {(i1 j1), ...} with i < j of
/// sgn(i1 j1 i2 j2 ...) prod S_{i j}.
template <Field K>
typename K::Elem pfaffian_matchings(const Matrix<K>& s) {
  const int m = s.rows();
  if (m % 2) return s.field().zero();
  auto acc = s.field().zero();
  std::vector<int> seq;
  std::vector<bool> used(m, false);
  auto rec = [&](auto&& self, typename K::Elem prod) -> void {
    int i = 0;
    while (i < m && used[i]) ++i;
    if (i == m) {
      acc += inversion_parity(seq) ? -prod : prod;
      return;
    }
    used[i] = true;
    for (int j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      seq.push_back(i);
      seq.push_back(j);
      self(self, prod * s(i, j));
      seq.pop_back();
      seq.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(rec, s.field().one());
  return acc;
}

/// Dense antisymmetric tensor T[i][j][k] = g(e_i*, e_j*, e_k*), computed by
/// placing each coefficient at all six orderings with the permutation sign.
template <Field K>
std::vector<typename K::Elem> dense_trilinear(const Multivector<K>& g) {
  const int n = g.dim();
  std::vector<typename K::Elem> t(n * n * n, g.field().zero());
  for (const auto& [s, c] : g.terms()) {
    auto idx = subset_indices(s);
    std::sort(idx.begin(), idx.end());
    do {
      t[(idx[0] * n + idx[1]) * n + idx[2]] = inversion_parity(idx) ? -c : c;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return t;
}

inline Multivector<PrimeField> reduce_mod(const Multivector<RationalField>& g,
                                          std::uint32_t p) {
  PrimeField f(p);
  Multivector<PrimeField> out(f, g.dim(), g.degree());
  for (const auto& [s, c] : g.terms()) out.add_term(s, f.from_rational(c.value()));
  return out;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(TRIVECTOR_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <Field K>
Multivector<K> load_fixture(const std::string& name, const K& field) {
  return to_multivector(parse_trivector(read_file(fixture_path(name))), field);
}

}  // namespace trivector::testing
