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

using testing::dense_trilinear;
using testing::inversion_parity;
using testing::random_covector;
using testing::random_invertible;
using testing::random_multivector;
using testing::random_nonzero_vector;

const RationalField kQ;
const PrimeField kF2(2);
const PrimeField kF7(7);

using MQ = Multivector<RationalField>;
using M2 = Multivector<PrimeField>;

TEST(Subsets, LexOrderAndCounts) {
  const auto s = lex_subsets(5, 3);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(subset_indices(s.front()), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(subset_indices(s[1]), (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(subset_indices(s.back()), (std::vector<int>{2, 3, 4}));
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_TRUE(lex_less(s[i - 1], s[i]));
  EXPECT_EQ(lex_subsets(8, 3).size(), 56u);
  EXPECT_EQ(lex_subsets(9, 2).size(), 36u);
}

TEST(Wedge, Examples) {
  const auto e12 = MQ::monomial(kQ, 4, {0, 1});
  const auto e3 = MQ::monomial(kQ, 4, {2});
  EXPECT_EQ(wedge(e12, e3), MQ::monomial(kQ, 4, {0, 1, 2}));
  EXPECT_EQ(wedge(MQ::monomial(kQ, 4, {1}), MQ::monomial(kQ, 4, {0})),
            MQ::monomial(kQ, 4, {0, 1}, -1));
  EXPECT_TRUE(wedge(MQ::monomial(kQ, 4, {0}), e12).is_zero());
}

TEST(Wedge, SignMatchesInversionCount) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> perm = {0, 1, 2, 3, 4, 5, 6};
    for (int i = 6; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const int k = 1 + static_cast<int>(rng.below(6));
    std::vector<int> a(perm.begin(), perm.begin() + k), b(perm.begin() + k, perm.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto w = wedge(MQ::monomial(kQ, 7, a, Rational(1)), MQ::monomial(kQ, 7, b, Rational(1)));
    std::vector<int> cat = a;
    cat.insert(cat.end(), b.begin(), b.end());
    EXPECT_EQ(w.coeff(Subset(0x7F)), Rational(inversion_parity(cat) ? -1 : 1));
  }
}

TEST(Wedge, GradedAnticommutative) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const int p = 1 + static_cast<int>(rng.below(3)), q = 1 + static_cast<int>(rng.below(3));
    const auto a = random_multivector(kF7, 7, p, rng, 3);
    const auto b = random_multivector(kF7, 7, q, rng, 3);
    const auto ab = wedge(a, b), ba = wedge(b, a);
    EXPECT_EQ(ab, (p * q) % 2 ? -ba : ba);
  }
}

TEST(Wedge, Associative) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_multivector(kQ, 7, 2, rng, 4);
    const auto b = random_multivector(kQ, 7, 2, rng, 4);
    const auto c = random_multivector(kQ, 7, 1, rng, 2);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Wedge, RejectsMismatch) {
  EXPECT_THROW(wedge(MQ(kQ, 4, 1), MQ(kQ, 5, 1)), SpecMismatch);
  EXPECT_THROW(wedge(MQ(kQ, 4, 3), MQ(kQ, 4, 2)), InvalidInput);
  EXPECT_THROW(M2(kF2, 4, 1) + Multivector<PrimeField>(kF7, 4, 1), SpecMismatch);
}

TEST(Multivector, CanonicalForm) {
  auto a = MQ::monomial(kQ, 5, {2, 0, 1}, 3);  // e3 e1 e2 = +e123
  EXPECT_EQ(a.coeff({0, 1, 2}), Rational(3));
  EXPECT_EQ(a.coeff({1, 0, 2}), Rational(-3));
  a += MQ::monomial(kQ, 5, {0, 1, 2}, -3);
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(a.size(), 0u);
  EXPECT_TRUE(MQ::monomial(kQ, 5, {1, 1, 2}).is_zero());
  EXPECT_THROW(MQ::monomial(kQ, 5, {0, 9, 1}), InvalidInput);
}

TEST(Contract, Examples) {
  const auto e123 = MQ::monomial(kQ, 4, {0, 1, 2});
  EXPECT_EQ(contract(Covector<RationalField>::basis(kQ, 4, 0), e123),
            MQ::monomial(kQ, 4, {1, 2}));
  EXPECT_EQ(contract(Covector<RationalField>::basis(kQ, 4, 1), e123),
            MQ::monomial(kQ, 4, {0, 2}, -1));
  EXPECT_TRUE(contract(Covector<RationalField>::basis(kQ, 4, 3), e123).is_zero());
}

TEST(Contract, SquareIsZeroAndDerivation) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_covector(kF7, 7, rng);
    const int p = 1 + static_cast<int>(rng.below(3));
    const auto a = random_multivector(kF7, 7, p, rng, 2);
    const auto b = random_multivector(kF7, 7, 2, rng, 2);
    if (p >= 2) EXPECT_TRUE(contract(x, contract(x, a)).is_zero());
    const auto lhs = contract(x, wedge(a, b));
    const auto t2 = wedge(a, contract(x, b));
    const auto rhs = wedge(contract(x, a), b) + (p % 2 ? -t2 : t2);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(TrilinearEval, Examples) {
  const auto g = MQ::monomial(kQ, 4, {0, 1, 2});
  auto e = [](int i) { return Covector<RationalField>::basis(kQ, 4, i); };
  EXPECT_EQ(trilinear_eval(g, e(0), e(1), e(2)), Rational(1));
  EXPECT_EQ(trilinear_eval(g, e(1), e(0), e(2)), Rational(-1));
  EXPECT_EQ(trilinear_eval(g, e(2), e(0), e(1)), Rational(1));
}

TEST(TrilinearEval, MatchesContractionsAndDenseTensor) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_multivector(kQ, 6, 3, rng, 2);
    const auto x = random_covector(kQ, 6, rng), y = random_covector(kQ, 6, rng),
               z = random_covector(kQ, 6, rng);
    const auto via = contract(z, contract(y, contract(x, g)));
    const auto v = trilinear_eval(g, x, y, z);
    EXPECT_EQ(via.coeff(Subset(0)), v);
    const auto dense = dense_trilinear(g);
    Rational acc(0);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k) acc += x[i] * y[j] * z[k] * dense[(i * 6 + j) * 6 + k];
    EXPECT_EQ(acc, v);
    EXPECT_TRUE(trilinear_eval(g, x, x, z).is_zero());
  }
}

TEST(Qsquare, Examples) {
  const auto e123 = M2::monomial(kF2, 6, {0, 1, 2});
  const auto e456 = M2::monomial(kF2, 6, {3, 4, 5});
  EXPECT_TRUE(qsquare(e123).is_zero());
  EXPECT_EQ(qsquare(e123 + e456), M2::monomial(kF2, 6, {0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(qsquare(MQ::monomial(kQ, 6, {0, 1, 2})), UnsupportedCharacteristic);
}

TEST(Qsquare, VanishesOnPureTensors) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto v = [&] { return M2::vector(kF2, std::span<const Fp>(testing::random_vector(kF2, 8, rng))); };
    const auto pure = wedge(wedge(v(), v()), v());
    EXPECT_TRUE(qsquare(pure).is_zero());
  }
}

TEST(Qsquare, FunctionalEquation) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto v = random_multivector(kF2, 8, 3, rng);
    const auto w = random_multivector(kF2, 8, 3, rng);
    EXPECT_EQ(qsquare(v + w), qsquare(v) + qsquare(w) + wedge(v, w));
  }
}

TEST(VolumePairToSkew, Examples) {
  const auto n1 = volume_pair_to_skew(MQ::monomial(kQ, 8, {2, 3, 4, 5, 6, 7}));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const int expect = (i == 0 && j == 1) ? 1 : (i == 1 && j == 0) ? -1 : 0;
      EXPECT_EQ(n1(i, j), Rational(expect));
    }
  // e7 ^ e8 ^ e123456 moves two vectors past six: even
  const auto n2 = volume_pair_to_skew(MQ::monomial(kQ, 8, {0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(n2(6, 7), Rational(1));
  EXPECT_TRUE(volume_pair_to_skew(MQ(kQ, 8, 6)).matrix().is_zero());
  EXPECT_THROW(volume_pair_to_skew(MQ(kQ, 8, 5)), InvalidInput);
}

TEST(VolumePairToSkew, MatchesDirectWedge) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_multivector(kF7, 7, 5, rng, 2);
    const auto n = volume_pair_to_skew(b);
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        if (j == k) continue;
        const auto top = wedge(Multivector<PrimeField>::monomial(kF7, 7, {j, k}), b);
        EXPECT_EQ(top.coeff(Subset(0x7F)), n(j, k));
      }
  }
}

TEST(Dualize, Examples) {
  const auto d1 = dualize_6_to_3(MQ::monomial(kQ, 9, {3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(d1, MQ::monomial(kQ, 9, {0, 1, 2}));
  // e789 ^ e123456: three past six, even
  const auto d2 = dualize_6_to_3(MQ::monomial(kQ, 9, {0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(d2, MQ::monomial(kQ, 9, {6, 7, 8}));
  EXPECT_THROW(dualize_6_to_3(MQ(kQ, 9, 5)), InvalidInput);
}

TEST(Dualize, MatchesDirectWedgeAndIsLinear) {
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_multivector(kF7, 9, 6, rng, 4);
    const auto b = random_multivector(kF7, 9, 6, rng, 4);
    const auto d = dualize_6_to_3(a);
    for (Subset s : lex_subsets(9, 3)) {
      const auto top = wedge(Multivector<PrimeField>::monomial(kF7, 9, subset_indices(s), kF7.one()), a);
      EXPECT_EQ(top.coeff(Subset(0x1FF)), d.coeff(s));
    }
    EXPECT_EQ(dualize_6_to_3(a + b), d + dualize_6_to_3(b));
  }
}

TEST(ApplyLinear, FunctorialAndDeterminant) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_multivector(kF7, 5, 2, rng);
    const auto a = testing::random_matrix(kF7, 5, 5, rng);
    const auto b = testing::random_matrix(kF7, 5, 5, rng);
    EXPECT_EQ(apply_linear(a * b, g), apply_linear(a, apply_linear(b, g)));
    const auto vol = Multivector<PrimeField>::monomial(kF7, 5, {0, 1, 2, 3, 4});
    EXPECT_EQ(apply_linear(a, vol), det(a) * vol);
  }
}

TEST(QuotientProject, Examples) {
  std::vector<Rational> e9(9, Rational(0));
  e9[8] = Rational(1);
  const auto g = MQ::monomial(kQ, 9, {0, 1, 8}) + MQ::monomial(kQ, 9, {2, 3, 4});
  EXPECT_EQ(quotient_project(g, std::span<const Rational>(e9)), MQ::monomial(kQ, 8, {2, 3, 4}));

  std::vector<Rational> e1(9, Rational(0));
  e1[0] = Rational(1);
  EXPECT_TRUE(quotient_project(MQ::monomial(kQ, 9, {0, 1, 2}), std::span<const Rational>(e1)).is_zero());

  std::vector<Rational> zero(9, Rational(0));
  EXPECT_THROW(quotient_project(g, std::span<const Rational>(zero)), InvalidInput);
}

TEST(QuotientProject, KillsTheLine) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_nonzero_vector(kF7, 9, rng);
    const auto q = quotient_map(std::span<const Fp>(u), kF7);
    for (const auto& e : q.apply(u)) EXPECT_TRUE(e.is_zero());
    EXPECT_EQ(rank(q), 8);
  }
}

/// Quotient map that eliminates coordinate `pivot` (any index with u != 0).
Matrix<PrimeField> quotient_map_at(const std::vector<Fp>& u, int pivot) {
  Matrix<PrimeField> q(kF2, 8, 9);
  for (int j = 0, r = 0; j < 9; ++j) {
    if (j == pivot) continue;
    q(r, j) = kF2.one();
    q(r, pivot) = u[j] / u[pivot];
    ++r;
  }
  return q;
}

TEST(QuotientProject, HyperdiscIndependentOfCompletion) {
  Rng rng(12);
  std::vector<Fp> u(9, kF2.zero());
  u[0] = u[1] = kF2.one();
  EXPECT_TRUE(hyperdisc2(quotient_project(M2::monomial(kF2, 9, {0, 1, 2}), std::span<const Fp>(u))).is_zero());
  for (int t = 0; t < 30; ++t) {
    const auto g = random_multivector(kF2, 9, 3, rng);
    const auto v = random_nonzero_vector(kF2, 9, rng);
    const auto base = hyperdisc2(quotient_project(g, std::span<const Fp>(v)));
    int alternatives = 0;
    for (int p = 0; p < 9; ++p) {
      if (v[p].is_zero()) continue;
      EXPECT_EQ(hyperdisc2(apply_linear(quotient_map_at(v, p), g)), base);
      // a further change of basis of the quotient
      const auto h = random_invertible(kF2, 8, rng);
      EXPECT_EQ(hyperdisc2(apply_linear(h * quotient_map_at(v, p), g)), base);
      ++alternatives;
    }
    EXPECT_GE(alternatives, 1);
  }
}

TEST(QuotientProject, CommutesWithQ) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto g = random_multivector(kF2, 9, 3, rng);
    const auto u = random_nonzero_vector(kF2, 9, rng);
    const std::span<const Fp> us(u);
    EXPECT_EQ(quotient_project(qsquare(g), us), qsquare(quotient_project(g, us)));
  }
}

}  // namespace
}  // namespace trivector
