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
 * @file coble.hpp
 * @brief From a trivector gamma in dimension 9: the skew family
 * Phi(x)_jk = gamma(x, e_j*, e_k*), the cubic P cutting out the rank <= 6
 * locus Y, the rank <= 4 locus X, exhaustive scans over F_p, projective
 * duality certificates, and the characteristic-2 dual cubic.
 *
 * Normalization of P: the principal sub-Pfaffians of Phi satisfy
 * (-1)^{i+1} Pf_i = x_i P (1-based i), which fixes P exactly.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/exterior.hpp"
#include "trivector/linalg.hpp"
#include "trivector/mpoly.hpp"
#include "trivector/scalars.hpp"
#include "trivector/subspaces.hpp"
#include "trivector/w38.hpp"

namespace trivector {

inline constexpr int kCobleDim = 9;

template <Field K>
void require_coble_shape(const Multivector<K>& gamma) {
  if (gamma.dim() != kCobleDim || gamma.degree() != 3) {
    throw InvalidInput("expected a trivector in dimension 9");
  }
}

/// 9 x 9 matrix of linear forms in x1..x9.
template <Field K>
class PfaffianFamily {
 public:
  PfaffianFamily(K field, int n)
      : field_(field), n_(n),
        entries_(static_cast<std::size_t>(n) * n, MPoly<K>(field, n)) {}

  const K& field() const { return field_; }
  int size() const { return n_; }
  const MPoly<K>& operator()(int j, int k) const { return entries_[j * n_ + k]; }
  MPoly<K>& at(int j, int k) { return entries_[j * n_ + k]; }

  /// Numeric matrix at a point.
  Matrix<K> at_point(std::span<const typename K::Elem> x) const {
    Matrix<K> m(field_, n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) m(j, k) = (*this)(j, k).eval(x);
    return m;
  }

 private:
  K field_;
  int n_;
  std::vector<MPoly<K>> entries_;
};

/// Phi(x)_jk = sum_i x_i gamma(e_i*, e_j*, e_k*). Checks Phi(x) x = 0 as a
/// polynomial identity.
template <Field K>
PfaffianFamily<K> phi_matrix(const Multivector<K>& gamma) {
  require_coble_shape(gamma);
  const K& field = gamma.field();
  const int n = gamma.dim();
  PfaffianFamily<K> phi(field, n);
  auto x = [&](int i) { return MPoly<K>::variable(field, n, i); };
  for (const auto& [s, c] : gamma.terms()) {
    const auto idx = subset_indices(s);
    const int a = idx[0], b = idx[1], d = idx[2];
    // cyclic permutations of (a, b, d) carry +c, transpositions -c
    phi.at(b, d) += c * x(a);
    phi.at(d, b) -= c * x(a);
    phi.at(d, a) += c * x(b);
    phi.at(a, d) -= c * x(b);
    phi.at(a, b) += c * x(d);
    phi.at(b, a) -= c * x(d);
  }
  for (int j = 0; j < n; ++j) {
    MPoly<K> row(field, n);
    for (int k = 0; k < n; ++k) row += phi(j, k) * x(k);
    if (!row.is_zero()) {
      throw InvariantViolation("Phi(x) x does not vanish identically");
    }
  }
  return phi;
}

/// Fast numeric evaluation of Phi at many points.
template <Field K>
class PhiEvaluator {
 public:
  using Elem = typename K::Elem;

  explicit PhiEvaluator(const Multivector<K>& gamma) : field_(gamma.field()) {
    require_coble_shape(gamma);
    for (const auto& [s, c] : gamma.terms()) {
      const auto idx = subset_indices(s);
      terms_.push_back({idx[0], idx[1], idx[2], c});
    }
  }

  Matrix<K> operator()(std::span<const Elem> x) const {
    Matrix<K> m(field_, kCobleDim, kCobleDim);
    for (const auto& t : terms_) {
      if (!x[t.a].is_zero()) {
        const auto v = t.c * x[t.a];
        m(t.b, t.d) += v;
        m(t.d, t.b) -= v;
      }
      if (!x[t.b].is_zero()) {
        const auto v = t.c * x[t.b];
        m(t.d, t.a) += v;
        m(t.a, t.d) -= v;
      }
      if (!x[t.d].is_zero()) {
        const auto v = t.c * x[t.d];
        m(t.a, t.b) += v;
        m(t.b, t.a) -= v;
      }
    }
    return m;
  }

 private:
  struct Term {
    int a, b, d;
    Elem c;
  };
  K field_;
  std::vector<Term> terms_;
};

template <Field K>
int rank_at(const Multivector<K>& gamma, std::span<const typename K::Elem> x) {
  return rank(PhiEvaluator<K>(gamma)(x));
}

template <Field K>
struct CobleCubic {
  MPoly<K> cubic;
  int pivot;  // 0-based index j whose sub-Pfaffian produced the cubic
  std::array<bool, kCobleDim> identities;  // (-1)^{i+1} Pf_i == x_i P

  bool all_identities_hold() const {
    for (bool b : identities)
      if (!b) return false;
    return true;
  }
};

/// The cubic P with Y = {P = 0}: takes the least j with Pf_j != 0,
/// divides by x_j, and verifies all nine sub-Pfaffian identities.
/// Throws DegenerateTrivector when every sub-Pfaffian vanishes.
template <Field K>
CobleCubic<K> coble_cubic(const Multivector<K>& gamma) {
  const auto phi = phi_matrix(gamma);
  const K& field = gamma.field();
  const int n = kCobleDim;
  auto entry = [&phi](int i, int j) -> const MPoly<K>& { return phi(i, j); };
  SubsetPfaffian pf(n, entry, MPoly<K>(field, n),
                    MPoly<K>::constant(field, n, field.one()));
  const std::uint32_t all = (1u << n) - 1u;
  std::vector<MPoly<K>> kappa;
  for (int j = 0; j < n; ++j) {
    const auto& p = pf(all & ~(1u << j));
    kappa.push_back(j % 2 == 0 ? p : -p);
  }
  int pivot = -1;
  for (int j = 0; j < n && pivot < 0; ++j)
    if (!kappa[j].is_zero()) pivot = j;
  if (pivot < 0) {
    throw DegenerateTrivector(
        "all sub-Pfaffians vanish: Phi has rank <= 6 everywhere");
  }
  auto cubic = divide_exact(kappa[pivot], MPoly<K>::variable(field, n, pivot));
  std::array<bool, kCobleDim> ok{};
  for (int i = 0; i < n; ++i)
    ok[i] = kappa[i] == MPoly<K>::variable(field, n, i) * cubic;
  return {std::move(cubic), pivot, ok};
}

/// Evaluates P and its gradient at points of F_p^9.
class CubicEvaluator {
 public:
  explicit CubicEvaluator(const MPoly<PrimeField>& p) : value_(p) {
    for (const auto& d : p.gradient()) grad_.emplace_back(d);
  }

  Fp value(std::span<const Fp> x) const { return value_(x); }

  std::vector<Fp> gradient(std::span<const Fp> x) const {
    std::vector<Fp> g;
    g.reserve(grad_.size());
    for (const auto& d : grad_) g.push_back(d(x));
    return g;
  }

  bool gradient_vanishes(std::span<const Fp> x) const {
    for (const auto& d : grad_)
      if (!d(x).is_zero()) return false;
    return true;
  }

 private:
  PolyEvaluator<PrimeField> value_;
  std::vector<PolyEvaluator<PrimeField>> grad_;
};

/// [ceil((sqrt q - 1)^4), floor((sqrt q + 1)^4)]: the possible point counts
/// of an abelian surface over F_q.
inline std::pair<std::uint64_t, std::uint64_t> weil_interval_surface(
    std::uint64_t q) {
  // (sqrt q +- 1)^4 = A +- B sqrt q with A = q^2 + 6q + 1, B = 4(q + 1)
  const long double a = static_cast<long double>(q * q + 6 * q + 1);
  const long double b = 4.0L * static_cast<long double>(q + 1);
  const long double s = std::sqrt(static_cast<long double>(q));
  auto lo = static_cast<std::uint64_t>(std::ceil(a - b * s));
  auto hi = static_cast<std::uint64_t>(std::floor(a + b * s));
  // exact correction: n >= A - B sqrt q  <=>  B sqrt q >= A - n
  auto ge = [&](long long lhs_b, long long rhs) {  // B sqrt q >= rhs
    if (rhs <= 0) return true;
    return static_cast<unsigned long long>(lhs_b) * lhs_b * q >=
           static_cast<unsigned long long>(rhs) * rhs;
  };
  const auto A = static_cast<long long>(q * q + 6 * q + 1);
  const auto B = static_cast<long long>(4 * (q + 1));
  while (lo > 0 && ge(B, A - static_cast<long long>(lo - 1))) --lo;
  while (!ge(B, A - static_cast<long long>(lo))) ++lo;
  // n <= A + B sqrt q  <=>  B sqrt q >= n - A
  while (ge(B, static_cast<long long>(hi + 1) - A)) ++hi;
  while (!ge(B, static_cast<long long>(hi) - A)) --hi;
  return {lo, hi};
}

struct ScanReport {
  std::uint32_t p = 0;
  std::uint64_t points_total = 0;
  std::uint64_t points_Y = 0;       // rank <= 6
  std::uint64_t points_X = 0;       // rank <= 4
  std::uint64_t rank2_count = 0;    // rank <= 2
  std::array<std::uint64_t, 5> rank_histogram{};  // ranks 0, 2, 4, 6, 8
  std::uint64_t cubic_mismatch_count = 0;  // (P = 0) != (rank <= 6)
  std::uint64_t sing_mismatch_count = 0;   // (P = 0 and dP = 0) != (rank <= 4)
  std::vector<std::vector<std::uint32_t>> sing_mismatches;  // first few
  std::vector<std::vector<std::uint32_t>> first_X_points;   // first few
};

inline constexpr std::size_t kScanKeep = 32;

namespace detail {

inline ScanReport scan_range(const PhiEvaluator<PrimeField>& phi,
                             const CubicEvaluator& cubic,
                             const ProjectivePoints& space, std::uint64_t begin,
                             std::uint64_t end) {
  const std::uint32_t p = space.q();
  ScanReport r;
  r.p = p;
  std::vector<std::uint32_t> raw;
  std::vector<Fp> x(kCobleDim);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    space.point(idx, raw);
    for (int i = 0; i < kCobleDim; ++i) x[i] = Fp::raw(raw[i], p);
    const int rk = rank(phi(x));
    ++r.points_total;
    if (rk % 2 != 0 || rk > 8) {
      throw InvariantViolation("odd rank of a skew matrix");
    }
    ++r.rank_histogram[rk / 2];
    const bool in_y = rk <= 6, in_x = rk <= 4;
    r.points_Y += in_y;
    r.points_X += in_x;
    r.rank2_count += rk <= 2;
    if (in_x && r.first_X_points.size() < kScanKeep) r.first_X_points.push_back(raw);
    const bool on_cubic = cubic.value(x).is_zero();
    if (on_cubic != in_y) ++r.cubic_mismatch_count;
    const bool singular = on_cubic && cubic.gradient_vanishes(x);
    if (singular != in_x) {
      ++r.sing_mismatch_count;
      if (r.sing_mismatches.size() < kScanKeep) r.sing_mismatches.push_back(raw);
    }
  }
  return r;
}

inline void merge_into(ScanReport& acc, const ScanReport& part) {
  acc.points_total += part.points_total;
  acc.points_Y += part.points_Y;
  acc.points_X += part.points_X;
  acc.rank2_count += part.rank2_count;
  for (int i = 0; i < 5; ++i) acc.rank_histogram[i] += part.rank_histogram[i];
  acc.cubic_mismatch_count += part.cubic_mismatch_count;
  acc.sing_mismatch_count += part.sing_mismatch_count;
  for (const auto& m : part.sing_mismatches)
    if (acc.sing_mismatches.size() < kScanKeep) acc.sing_mismatches.push_back(m);
  for (const auto& m : part.first_X_points)
    if (acc.first_X_points.size() < kScanKeep) acc.first_X_points.push_back(m);
}

}  // namespace detail

/// Classifies every point of P^8(F_p) by the rank of Phi and compares the
/// singular locus of {P = 0} with the rank <= 4 locus. The points are split
/// into contiguous ranges per thread and merged in point order, so the
/// report does not depend on `threads`.
inline ScanReport scan_loci(const Multivector<PrimeField>& gamma,
                            const MPoly<PrimeField>& cubic,
                            unsigned threads = 1) {
  require_coble_shape(gamma);
  const std::uint32_t p = gamma.field().modulus();
  if (p > 7) throw InvalidInput("scans are limited to p <= 7");
  const PhiEvaluator<PrimeField> phi(gamma);
  const CubicEvaluator ev(cubic);
  const ProjectivePoints space(kCobleDim, p);
  const std::uint64_t total = space.count();
  threads = std::max(1u, threads);
  std::vector<ScanReport> parts(threads);
  auto run = [&](unsigned t) {
    const std::uint64_t b = total * t / threads, e = total * (t + 1) / threads;
    parts[t] = detail::scan_range(phi, ev, space, b, e);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  ScanReport out;
  out.p = p;
  for (const auto& part : parts) detail::merge_into(out, part);
  return out;
}

inline ScanReport scan_loci(const Multivector<PrimeField>& gamma,
                            unsigned threads = 1) {
  return scan_loci(gamma, coble_cubic(gamma).cubic, threads);
}

// ---------------------------------------------------------------------------
// Projective duality certificates

template <Field K>
struct DualityCertificate {
  using Elem = typename K::Elem;

  std::vector<Elem> y;                 // first nonzero coordinate is 1
  int rank_at_y = 0;
  std::vector<std::vector<Elem>> kernel;  // basis of ker Phi(y), echelon
  std::vector<Elem> h;                 // gradient of P at y
  bool on_cubic = false;
  bool smooth = false;
  bool kernel_in_tangent = false;
  bool witness_vanishing = false;

  bool valid() const {
    return on_cubic && smooth && kernel_in_tangent && witness_vanishing;
  }
};

/// Checks at y that (i) P(y) = 0; (ii) dP(y) != 0 and rank Phi(y) = 6;
/// (iii) <dP(y), v> = 0 for every v in ker Phi(y); (iv) for every pair of
/// kernel basis covectors, i_{v_b} i_{v_a} gamma lies on the line spanned by
/// dP(y), i.e. the kernel is an instability witness for the image of gamma
/// in the quotient by that line.
template <Field K>
DualityCertificate<K> duality_certificate(const Multivector<K>& gamma,
                                          const MPoly<K>& cubic,
                                          std::span<const typename K::Elem> y) {
  require_coble_shape(gamma);
  const K& field = gamma.field();
  DualityCertificate<K> cert;
  cert.y.assign(y.begin(), y.end());
  const auto m = PhiEvaluator<K>(gamma)(y);
  cert.rank_at_y = rank(m);
  cert.kernel = kernel(m);
  for (const auto& d : cubic.gradient()) cert.h.push_back(d.eval(y));

  bool h_nonzero = false;
  for (const auto& c : cert.h) h_nonzero |= !c.is_zero();

  cert.on_cubic = cubic.eval(y).is_zero();
  cert.smooth = h_nonzero && cert.rank_at_y == 6;

  cert.kernel_in_tangent = true;
  for (const auto& v : cert.kernel) {
    auto pairing = field.zero();
    for (int i = 0; i < kCobleDim; ++i) pairing += cert.h[i] * v[i];
    cert.kernel_in_tangent &= pairing.is_zero();
  }

  cert.witness_vanishing = true;
  for (std::size_t a = 0; a < cert.kernel.size(); ++a) {
    for (std::size_t b = a + 1; b < cert.kernel.size(); ++b) {
      const auto w = double_contract(gamma, Covector<K>(field, cert.kernel[a]),
                                     Covector<K>(field, cert.kernel[b]));
      std::vector<typename K::Elem> wv(kCobleDim, field.zero());
      for (const auto& [s, c] : w.terms()) wv[std::countr_zero(s)] = c;
      // w must be a multiple of h (w = 0 if h = 0)
      const auto pair = Matrix<K>::from_rows(field, {cert.h, wv});
      const int allowed = h_nonzero ? 1 : 0;
      cert.witness_vanishing &= rank(pair) <= allowed;
    }
  }
  return cert;
}

/// The first `count` smooth points of {P = 0} over F_p in sweep order
/// (P(y) = 0, dP(y) != 0, rank Phi(y) = 6).
inline std::vector<std::vector<Fp>> smooth_points(
    const Multivector<PrimeField>& gamma, const MPoly<PrimeField>& cubic,
    std::size_t count) {
  require_coble_shape(gamma);
  const std::uint32_t p = gamma.field().modulus();
  const PhiEvaluator<PrimeField> phi(gamma);
  const CubicEvaluator ev(cubic);
  const ProjectivePoints space(kCobleDim, p);
  std::vector<std::vector<Fp>> out;
  std::vector<std::uint32_t> raw;
  std::vector<Fp> x(kCobleDim);
  for (std::uint64_t idx = 0; idx < space.count() && out.size() < count; ++idx) {
    space.point(idx, raw);
    for (int i = 0; i < kCobleDim; ++i) x[i] = Fp::raw(raw[i], p);
    if (!ev.value(x).is_zero() || ev.gradient_vanishes(x)) continue;
    if (rank(phi(x)) != 6) continue;
    out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comultiplication

/// Rank of x -> i_x gamma from covectors to the second exterior power.
template <Field K>
int comul_rank(const Multivector<K>& gamma) {
  require_coble_shape(gamma);
  const int n = gamma.dim();
  const auto pairs = lex_subsets(n, 2);
  std::vector<int> row_of(1u << n, -1);
  for (std::size_t r = 0; r < pairs.size(); ++r) row_of[pairs[r]] = static_cast<int>(r);
  Matrix<K> m(gamma.field(), static_cast<int>(pairs.size()), n);
  for (int i = 0; i < n; ++i) {
    const auto img = contract(Covector<K>::basis(gamma.field(), n, i), gamma);
    for (const auto& [s, c] : img.terms()) m(row_of[s], i) = c;
  }
  return rank(std::move(m));
}

// ---------------------------------------------------------------------------
// Characteristic 2

/// The cubic in u1..u9 obtained by running the Pfaffian construction on
/// the dual trivector of Q(gamma). Its zero set is the set of u where the
/// image of gamma in the quotient by u has vanishing hyperdiscriminant.
inline CobleCubic<PrimeField> char2_dual_cubic(
    const Multivector<PrimeField>& gamma) {
  require_coble_shape(gamma);
  if (gamma.field().characteristic() != 2) {
    throw UnsupportedCharacteristic("the dual cubic is built over F_2");
  }
  return coble_cubic(dualize_6_to_3(qsquare(gamma)));
}

struct Char2Equivalence {
  std::uint64_t points = 0;
  std::uint64_t on_dual_cubic = 0;
  std::uint64_t hyperdisc_zero = 0;
  std::uint64_t mismatch_count = 0;
  std::vector<std::vector<std::uint32_t>> mismatches;  // first few
};

/// Compares P'(u) = 0 with hyperdisc2(gamma mod u) = 0 on all of P^8(F_2).
inline Char2Equivalence char2_equivalence(const Multivector<PrimeField>& gamma,
                                          const MPoly<PrimeField>& dual_cubic) {
  const ProjectivePoints space(kCobleDim, 2);
  const PolyEvaluator<PrimeField> ev(dual_cubic);
  Char2Equivalence out;
  std::vector<std::uint32_t> raw;
  std::vector<Fp> u(kCobleDim);
  for (std::uint64_t idx = 0; idx < space.count(); ++idx) {
    space.point(idx, raw);
    for (int i = 0; i < kCobleDim; ++i) u[i] = Fp::raw(raw[i], 2);
    const bool on_cubic = ev(u).is_zero();
    const bool hd_zero =
        hyperdisc2(quotient_project(gamma, std::span<const Fp>(u))).is_zero();
    ++out.points;
    out.on_dual_cubic += on_cubic;
    out.hyperdisc_zero += hd_zero;
    if (on_cubic != hd_zero) {
      ++out.mismatch_count;
      if (out.mismatches.size() < kScanKeep) out.mismatches.push_back(raw);
    }
  }
  return out;
}

}  // namespace trivector
