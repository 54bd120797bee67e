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


#include <gtest/gtest.h>

#include "helpers.hpp"

namespace trivector {
namespace {

TEST(FieldSpec, ParsesTokens) {
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("Fp:7").p, 7u);
  EXPECT_EQ(FieldSpec::parse("Fp:7").str(), "Fp:7");
  EXPECT_THROW(FieldSpec::parse("Fp:8"), InvalidInput);
  EXPECT_THROW(FieldSpec::parse("Fp:1"), InvalidInput);
  EXPECT_THROW(FieldSpec::parse("F7"), InvalidInput);
  EXPECT_THROW(FieldSpec::parse("Fp:"), InvalidInput);
  EXPECT_THROW(FieldSpec::prime(2147483659u), InvalidInput);
  EXPECT_EQ(FieldSpec::prime(2147483647u).p, 2147483647u);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(-1) * Rational(-1), Rational(1));
  EXPECT_EQ(Rational(2, 3).inv(), Rational(3, 2));
  EXPECT_EQ(Rational(1).inv(), Rational(1));
  EXPECT_EQ(Rational(4, -6).str(), "-2/3");
  EXPECT_THROW(Rational(0).inv(), DivisionByZero);
  EXPECT_THROW(Rational(1, 0), DivisionByZero);
}

TEST(Fp, Arithmetic) {
  PrimeField f(7);
  EXPECT_EQ(f.from_int(3) + f.from_int(5), f.one());
  EXPECT_EQ(f.from_int(3).inv(), f.from_int(5));
  EXPECT_EQ(f.one().inv(), f.one());
  EXPECT_EQ(f.from_int(-1) * f.from_int(-1), f.one());
  EXPECT_EQ(f.from_int(-3).value(), 4u);
  EXPECT_THROW(f.zero().inv(), DivisionByZero);
  EXPECT_EQ(f.from_rational(mpq_class(1, 2)), f.from_int(4));
  EXPECT_THROW(f.from_rational(mpq_class(1, 14)), InvalidInput);
}

TEST(Fp, LargeModulusDoesNotOverflow) {
  PrimeField f(2147483647u);
  const auto a = f.from_int(2147483646);
  EXPECT_EQ(a * a, f.one());
  EXPECT_EQ(a.inv(), a);
}

TEST(Fp, MixingModuliIsAnError) {
  PrimeField f5(5), f7(7);
  EXPECT_THROW(f5.one() + f7.one(), SpecMismatch);
  EXPECT_THROW(f5.one() * f7.one(), SpecMismatch);
}

TEST(Fp, FermatSpotCheck) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 65521u}) {
    PrimeField f(p);
    Rng rng(p);
    for (int t = 0; t < 100; ++t) {
      const auto a = sample_nonzero(f, rng);
      EXPECT_TRUE(a.pow(p - 1).is_one()) << p;
      EXPECT_EQ(a * a.inv(), f.one());
    }
  }
}

TEST(Sampling, DeterministicAndInRange) {
  PrimeField f7(7), f2(2);
  EXPECT_EQ(sample_uniform(f7, 0), sample_uniform(f7, 0));
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_LT(sample_uniform(f2, s).value(), 2u);
  Rng shared(42);
  std::vector<std::uint32_t> draws;
  for (int i = 0; i < 50; ++i) draws.push_back(sample_uniform(f7, shared).value());
  EXPECT_GT(std::count_if(draws.begin(), draws.end(),
                          [&](auto v) { return v != draws[0]; }),
            0);
  Rng replay(42);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sample_uniform(f7, replay).value(), draws[i]);
}

TEST(Sampling, RoughlyUniformOverF7) {
  PrimeField f(7);
  Rng rng(9);
  std::array<int, 7> hist{};
  for (int i = 0; i < 7000; ++i) ++hist[sample_uniform(f, rng).value()];
  for (int h : hist) {
    EXPECT_GT(h, 850);
    EXPECT_LT(h, 1150);
  }
}

TEST(Sampling, RationalRange) {
  RationalField q;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_uniform(q, rng);
    EXPECT_TRUE(x.is_integer());
    EXPECT_LE(abs(x.value()), kRationalSampleBound);
  }
}

TEST(Rational, ExpressionIsDeterministic) {
  auto eval = [] {
    Rational acc(0);
    for (int i = 1; i <= 30; ++i) acc = acc * Rational(i, i + 1) + Rational(1, i);
    return acc.str();
  };
  EXPECT_EQ(eval(), eval());
}

TEST(Field, FieldsAreComparable) {
  EXPECT_EQ(PrimeField(7), PrimeField(7));
  EXPECT_FALSE(PrimeField(7) == PrimeField(5));
  EXPECT_EQ(RationalField{}.spec().str(), "Q");
}

}  // namespace
}  // namespace trivector
