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
 * @file verlinde.hpp
 * @brief Hilbert function of a weighted hypersurface, and the degree-8
 * polynomial it should agree with.
 */

#pragma once

#include <gmpxx.h>

#include <vector>

#include "trivector/error.hpp"

namespace trivector {

struct GradedRingSpec {
  std::vector<int> weights;
  int relation_degree;

  /// Nine generators of degree 1, one of degree 3, one relation in degree 6.
  static GradedRingSpec standard() {
    GradedRingSpec s{std::vector<int>(9, 1), 6};
    s.weights.push_back(3);
    return s;
  }

  void validate() const {
    if (weights.empty()) throw InvalidInput("no generators");
    for (int w : weights)
      if (w <= 0) throw InvalidInput("generator weights must be positive");
    if (relation_degree < 1) throw InvalidInput("relation degree must be >= 1");
  }
};

/// Coefficient of t^d in (1 - t^r) / prod_w (1 - t^w); zero for d < 0.
inline mpz_class hilbert_coefficient(const GradedRingSpec& spec, int d) {
  spec.validate();
  if (d < 0) return 0;
  std::vector<mpz_class> series(d + 1, 0);
  series[0] = 1;
  for (int w : spec.weights)
    for (int i = w; i <= d; ++i) series[i] += series[i - w];
  mpz_class out = series[d];
  if (d >= spec.relation_degree) out -= series[d - spec.relation_degree];
  return out;
}

/// 2/8! (d+1)(d+2)(d+3)^2(d+4)(d+5)(d^2+6d+56).
inline mpq_class verlinde_value(long d) {
  const mpz_class x = d;
  mpz_class num = 2 * (x + 1) * (x + 2) * (x + 3) * (x + 3) * (x + 4) * (x + 5) *
                  (x * x + 6 * x + 56);
  mpq_class out(num, 40320);
  out.canonicalize();
  if (out.get_den() != 1) {
    throw InvariantViolation("closed form is not integral at d = " +
                             std::to_string(d));
  }
  return out;
}

}  // namespace trivector
