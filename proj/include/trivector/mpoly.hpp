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
 * @file mpoly.hpp
 * @brief Sparse multivariate polynomials over a field, up to 16 variables,
 * each exponent below 16.
 *
 * Exponents are packed 4 bits per variable with variable 0 in the most
 * significant nibble, so comparing (total degree, packed word) is exactly
 * graded-lex order with x1 > x2 > ... .
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/scalars.hpp"

namespace trivector {

inline constexpr int kMaxVars = 16;
inline constexpr int kMaxExponent = 15;

/// Packed exponent vector.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

  static Monomial variable(int i, int e = 1) {
    Monomial m;
    m.set(i, e);
    return m;
  }

  static Monomial from_exponents(std::span<const int> exps) {
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i)
      m.set(static_cast<int>(i), exps[i]);
    return m;
  }

  constexpr std::uint64_t bits() const { return bits_; }

  int exponent(int i) const {
    return static_cast<int>((bits_ >> shift(i)) & 0xFu);
  }

  void set(int i, int e) {
    if (i < 0 || i >= kMaxVars) throw InvalidInput("variable out of range");
    if (e < 0 || e > kMaxExponent) throw InvalidInput("exponent out of range");
    bits_ &= ~(std::uint64_t{0xF} << shift(i));
    bits_ |= static_cast<std::uint64_t>(e) << shift(i);
  }

  int degree() const {
    std::uint64_t x = (bits_ & 0x0F0F0F0F0F0F0F0Full) +
                      ((bits_ >> 4) & 0x0F0F0F0F0F0F0F0Full);
    return static_cast<int>((x * 0x0101010101010101ull) >> 56);
  }

  /// Product; throws when an exponent would exceed 15.
  friend Monomial operator*(Monomial a, Monomial b) {
    const std::uint64_t sum = a.bits_ + b.bits_;
    // a nibble overflowed iff the carry-free sum differs from the real one
    const std::uint64_t carries = (sum ^ a.bits_ ^ b.bits_) &
                                  0x1111111111111110ull;
    if (carries != 0 || sum < a.bits_) {
      throw InvalidInput("monomial exponent overflow");
    }
    return Monomial(sum);
  }

  /// a / b, assuming b divides a.
  friend Monomial operator/(Monomial a, Monomial b) {
    return Monomial(a.bits_ - b.bits_);
  }

  bool divisible_by(Monomial b) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exponent(i) < b.exponent(i)) return false;
    return true;
  }

  friend bool operator==(Monomial, Monomial) = default;

 private:
  static int shift(int i) { return 60 - 4 * i; }
  std::uint64_t bits_ = 0;
};

struct GrlexLess {
  bool operator()(Monomial a, Monomial b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.bits() < b.bits();
  }
};

template <Field K>
class MPoly {
 public:
  using Elem = typename K::Elem;
  using Terms = std::map<Monomial, Elem, GrlexLess>;

  MPoly(K field, int nvars) : field_(field), nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw InvalidInput("too many variables");
  }

  static MPoly constant(K field, int nvars, const Elem& c) {
    MPoly p(field, nvars);
    p.add_term(Monomial(), c);
    return p;
  }

  /// The variable x_{i+1} (0-based i).
  static MPoly variable(K field, int nvars, int i) {
    if (i < 0 || i >= nvars) throw InvalidInput("variable out of range");
    MPoly p(field, nvars);
    p.add_term(Monomial::variable(i), field.one());
    return p;
  }

  /// Linear form sum_i coeffs[i] x_{i+1}.
  static MPoly linear(K field, std::span<const Elem> coeffs) {
    MPoly p(field, static_cast<int>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      p.add_term(Monomial::variable(static_cast<int>(i)), coeffs[i]);
    return p;
  }

  const K& field() const { return field_; }
  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Elem coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(Monomial m, const Elem& c) {
    for (int i = nvars_; i < kMaxVars; ++i) {
      if (m.exponent(i) != 0) throw InvalidInput("monomial uses extra vars");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
  }

  Elem eval(std::span<const Elem> x) const {
    if (static_cast<int>(x.size()) != nvars_) {
      throw SpecMismatch("evaluation point has wrong length");
    }
    auto acc = field_.zero();
    for (const auto& [m, c] : terms_) {
      auto t = c;
      for (int i = 0; i < nvars_ && !t.is_zero(); ++i) {
        for (int e = m.exponent(i); e > 0; --e) t *= x[i];
      }
      acc += t;
    }
    return acc;
  }

  /// Formal partial derivative in x_{i+1}.
  MPoly partial(int i) const {
    if (i < 0 || i >= nvars_) throw InvalidInput("variable out of range");
    MPoly out(field_, nvars_);
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(i);
      if (e == 0) continue;
      Monomial d = m;
      d.set(i, e - 1);
      out.add_term(d, field_.from_int(e) * c);
    }
    return out;
  }

  std::vector<MPoly> gradient() const {
    std::vector<MPoly> g;
    g.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) g.push_back(partial(i));
    return g;
  }

  MPoly operator-() const {
    MPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly out(a.field_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  friend MPoly operator*(const Elem& s, const MPoly& a) {
    MPoly out(a.field_, a.nvars_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Canonical text: graded-lex descending, terms `c x1^a1 ... xn^an`
  /// (exponent 1 written bare, absent variables omitted) joined by " + ".
  std::string str(const std::string& var = "x") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += it->second.str();
      for (int i = 0; i < nvars_; ++i) {
        const int e = it->first.exponent(i);
        if (e == 0) continue;
        out += " " + var + std::to_string(i + 1);
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

  void check(const MPoly& o) const {
    if (!(field_ == o.field_) || nvars_ != o.nvars_) {
      throw SpecMismatch("polynomials over different rings");
    }
  }

 private:
  K field_;
  int nvars_;
  Terms terms_;
};

/// Exact quotient f / l for a nonzero homogeneous linear form l.
///
/// Let x_j be the first variable occurring in l. Repeatedly cancel the term
/// of highest x_j-degree; what survives is free of x_j and is zero exactly
/// when l divides f.
template <Field K>
MPoly<K> divide_exact(const MPoly<K>& f, const MPoly<K>& l) {
  f.check(l);
  if (l.is_zero() || !l.is_homogeneous() || l.total_degree() != 1) {
    throw InvalidInput("divisor must be a nonzero linear form");
  }
  int lead = -1;
  for (int i = 0; i < l.nvars() && lead < 0; ++i) {
    if (!l.coeff(Monomial::variable(i)).is_zero()) lead = i;
  }
  const auto lead_inv = l.coeff(Monomial::variable(lead)).inv();
  const Monomial xj = Monomial::variable(lead);

  MPoly<K> q(f.field(), f.nvars());
  MPoly<K> r = f;
  for (;;) {
    const typename MPoly<K>::Terms::value_type* best = nullptr;
    for (const auto& t : r.terms()) {
      const int e = t.first.exponent(lead);
      if (e > 0 && (best == nullptr || e > best->first.exponent(lead))) {
        best = &t;
      }
    }
    if (best == nullptr) break;
    MPoly<K> t(f.field(), f.nvars());
    t.add_term(best->first / xj, best->second * lead_inv);
    r -= t * l;
    q += t;
  }
  if (!r.is_zero()) {
    throw DivisibilityError("polynomial is not divisible by " + l.str(),
                            r.str());
  }
  return q;
}

/// Coefficient-wise image of a polynomial in another field, e.g. reduction
/// of a rational polynomial modulo p.
template <Field From, Field To>
MPoly<To> map_coefficients(const MPoly<From>& f, const To& target) {
  MPoly<To> out(target, f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if constexpr (std::is_same_v<typename From::Elem, Rational>) {
      out.add_term(m, target.from_rational(c.value()));
    } else {
      out.add_term(m, target.from_int(c.value()));
    }
  }
  return out;
}

/// Evaluator with exponents unpacked once, for repeated evaluation at many
/// points (scans).
template <Field K>
class PolyEvaluator {
 public:
  using Elem = typename K::Elem;

  explicit PolyEvaluator(const MPoly<K>& f)
      : field_(f.field()), nvars_(f.nvars()) {
    for (const auto& [m, c] : f.terms()) {
      Term t{c, {}};
      for (int i = 0; i < nvars_; ++i) {
        t.exps[i] = static_cast<std::uint8_t>(m.exponent(i));
        max_exp_ = std::max(max_exp_, m.exponent(i));
      }
      terms_.push_back(t);
    }
  }

  Elem operator()(std::span<const Elem> x) const {
    // powers[i][e] = x_i^e
    std::array<std::array<Elem, kMaxExponent + 1>, kMaxVars> powers;
    for (int i = 0; i < nvars_; ++i) {
      powers[i][0] = field_.one();
      for (int e = 1; e <= max_exp_; ++e) powers[i][e] = powers[i][e - 1] * x[i];
    }
    auto acc = field_.zero();
    for (const auto& t : terms_) {
      auto v = t.coeff;
      for (int i = 0; i < nvars_; ++i)
        if (t.exps[i] != 0) v *= powers[i][t.exps[i]];
      acc += v;
    }
    return acc;
  }

 private:
  struct Term {
    Elem coeff;
    std::array<std::uint8_t, kMaxVars> exps;
  };

  K field_;
  int nvars_;
  int max_exp_ = 0;
  std::vector<Term> terms_;
};

}  // namespace trivector
