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
 * @file scalars.hpp
 * @brief Exact scalars: residues modulo a prime below 2^31 and arbitrary
 * precision rationals.
 *
 * Every algorithm in the library is a template over a field type `K`
 * satisfying the `Field` concept. A field object is a small value that knows
 * how to build its zero, one and integer images; elements are plain values.
 * Residues carry their modulus so that mixing two prime fields is caught at
 * run time, while mixing a prime field with the rationals does not compile.
 */

#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "trivector/error.hpp"

namespace trivector {

/// Deterministic primality test; exact for every n < 2^32.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Field selector as it appears in files and on the command line:
/// `Q` or `Fp:<prime>`.
struct FieldSpec {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) {
      throw InvalidInput("modulus " + std::to_string(p) +
                         " is not a prime below 2^31");
    }
    return {Kind::prime, p};
  }

  static FieldSpec parse(const std::string& token) {
    if (token == "Q") return rationals();
    if (token.rfind("Fp:", 0) == 0) {
      const std::string digits = token.substr(3);
      if (digits.empty() || digits.size() > 10 ||
          digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidInput("bad field token '" + token + "'");
      }
      return prime(static_cast<std::uint32_t>(std::stoull(digits)));
    }
    throw InvalidInput("bad field token '" + token + "' (expected Q or Fp:p)");
  }

  bool is_prime_field() const { return kind == Kind::prime; }
  std::uint32_t characteristic() const { return is_prime_field() ? p : 0; }
  std::string str() const {
    return is_prime_field() ? "Fp:" + std::to_string(p) : "Q";
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Residue class modulo a prime p < 2^31, stored canonically in [0, p).
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v, std::uint32_t p) : v_(reduce(v, p)), p_(p) {}

  /// Wraps an already reduced residue.
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp inv() const {
    if (v_ == 0) throw DivisionByZero();
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      const std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc = raw(1 % p_, p_);
    while (e != 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string str() const { return std::to_string(v_); }

  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

  Fp& operator+=(const Fp& o) {
    check(o);
    std::uint32_t s = v_ + o.v_;  // < 2^32 since p < 2^31
    if (s >= p_) s -= p_;
    v_ = s;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check(b);
    return a.v_ == b.v_;
  }

 private:
  static std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
    if (p == 0) throw InvalidInput("residue with modulus 0");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  void check(const Fp& o) const {
    if (p_ != o.p_) {
      throw SpecMismatch("residues modulo " + std::to_string(p_) + " and " +
                         std::to_string(o.p_) + " mixed");
    }
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Rational number in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : q_(static_cast<long>(n)) {}  // NOLINT
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    q_.canonicalize();
  }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational inv() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1) / q_);
  }

  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }

 private:
  mpq_class q_;
};

class PrimeField {
 public:
  using Elem = Fp;

  explicit PrimeField(std::uint32_t p) : p_(FieldSpec::prime(p).p) {}

  Elem zero() const { return Fp::raw(0, p_); }
  Elem one() const { return Fp::raw(1, p_); }
  Elem from_int(std::int64_t n) const { return Fp(n, p_); }
  Elem from_rational(const mpq_class& q) const {
    const mpz_class num = q.get_num() % p_;
    const mpz_class den = q.get_den() % p_;
    if (den == 0) {
      throw InvalidInput("denominator of " + q.get_str() +
                         " vanishes modulo " + std::to_string(p_));
    }
    return from_int(num.get_si()) / from_int(den.get_si());
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return {FieldSpec::Kind::prime, p_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using Elem = Rational;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_int(std::int64_t n) const { return Rational(n); }
  Elem from_rational(const mpq_class& q) const { return Rational(q); }

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class K>
concept Field = std::equality_comparable<K> &&
    requires(const K& k, const typename K::Elem& a, std::int64_t n,
             const mpq_class& q) {
  { k.zero() } -> std::same_as<typename K::Elem>;
  { k.one() } -> std::same_as<typename K::Elem>;
  { k.from_int(n) } -> std::same_as<typename K::Elem>;
  { k.from_rational(q) } -> std::same_as<typename K::Elem>;
  { k.characteristic() } -> std::convertible_to<std::uint32_t>;
  { k.spec() } -> std::same_as<FieldSpec>;
  { a + a } -> std::same_as<typename K::Elem>;
  { a - a } -> std::same_as<typename K::Elem>;
  { a * a } -> std::same_as<typename K::Elem>;
  { -a } -> std::same_as<typename K::Elem>;
  { a.inv() } -> std::same_as<typename K::Elem>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
};

/// Explicit seeded random stream. One owner; copies fork the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n) by rejection, so the draw sequence depends only on
  /// the mt19937_64 output and not on the standard library's distributions.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InvalidInput("Rng::below(0)");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Integers in [-kRationalSampleBound, kRationalSampleBound] stand in for
/// uniform sampling over Q.
inline constexpr std::int64_t kRationalSampleBound = 9;

inline Fp sample_uniform(const PrimeField& k, Rng& rng) {
  return Fp::raw(static_cast<std::uint32_t>(rng.below(k.modulus())),
                 k.modulus());
}

inline Rational sample_uniform(const RationalField&, Rng& rng) {
  return Rational(rng.between(-kRationalSampleBound, kRationalSampleBound));
}

template <Field K>
typename K::Elem sample_uniform(const K& k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform(k, rng);
}

/// Nonzero sample.
template <Field K>
typename K::Elem sample_nonzero(const K& k, Rng& rng) {
  for (;;) {
    auto x = sample_uniform(k, rng);
    if (!x.is_zero()) return x;
  }
}

}  // namespace trivector
