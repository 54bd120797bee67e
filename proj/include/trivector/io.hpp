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
 * @file io.hpp
 * @brief Text formats.
 *
 * Trivector files:
 *
 *     field Fp:7
 *     dim 9
 *     1 2 3 4
 *     2 5 9 -1/2
 *
 * Indices are 1-based with i < j < k <= dim; coefficients are integers or
 * a/b. Repeated index triples are summed. Blank lines and text after '#'
 * are ignored. Polynomials use the canonical form printed by MPoly::str.
 */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <istream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trivector/error.hpp"
#include "trivector/exterior.hpp"
#include "trivector/mpoly.hpp"
#include "trivector/scalars.hpp"

namespace trivector {

/// A parsed trivector file, before choosing the arithmetic.
struct TrivectorFile {
  FieldSpec field;
  int dim = 0;
  std::map<Subset, mpq_class> coeffs;  // summed, zeros dropped
};

inline mpq_class parse_coefficient(const std::string& token) {
  static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(token, pattern)) {
    throw InvalidInput("bad coefficient '" + token + "'");
  }
  const auto slash = token.find('/');
  if (slash != std::string::npos && mpz_class(token.substr(slash + 1)) == 0) {
    throw InvalidInput("zero denominator in '" + token + "'");
  }
  mpq_class q(token[0] == '+' ? token.substr(1) : token, 10);
  q.canonicalize();
  return q;
}

inline TrivectorFile parse_trivector(std::istream& in) {
  TrivectorFile out;
  bool have_field = false, have_dim = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (!have_field) {
        if (tok.size() != 2 || tok[0] != "field") {
          throw InvalidInput("expected 'field <Q|Fp:p>'");
        }
        out.field = FieldSpec::parse(tok[1]);
        have_field = true;
      } else if (!have_dim) {
        if (tok.size() != 2 || tok[0] != "dim" ||
            tok[1].find_first_not_of("0123456789") != std::string::npos ||
            tok[1].size() > 2) {
          throw InvalidInput("expected 'dim <n>'");
        }
        out.dim = std::stoi(tok[1]);
        if (out.dim < 3 || out.dim > kMaxDim) {
          throw InvalidInput("dim must be between 3 and 16");
        }
        have_dim = true;
      } else {
        if (tok.size() != 4) throw InvalidInput("expected '<i> <j> <k> <coeff>'");
        int idx[3];
        for (int a = 0; a < 3; ++a) {
          if (tok[a].empty() || tok[a].size() > 2 ||
              tok[a].find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidInput("bad index '" + tok[a] + "'");
          }
          idx[a] = std::stoi(tok[a]);
        }
        if (!(1 <= idx[0] && idx[0] < idx[1] && idx[1] < idx[2] &&
              idx[2] <= out.dim)) {
          throw InvalidInput("indices must satisfy 1 <= i < j < k <= dim");
        }
        const auto s = static_cast<Subset>((1u << (idx[0] - 1)) |
                                           (1u << (idx[1] - 1)) |
                                           (1u << (idx[2] - 1)));
        auto& c = out.coeffs[s];
        c += parse_coefficient(tok[3]);
        if (sgn(c) == 0) out.coeffs.erase(s);
      }
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_field) throw ParseError("missing 'field' line", lineno);
  if (!have_dim) throw ParseError("missing 'dim' line", lineno);
  return out;
}

inline TrivectorFile parse_trivector(const std::string& text) {
  std::istringstream in(text);
  return parse_trivector(in);
}

/// Builds the multivector over `field`. A rational file may be read over
/// any field whose characteristic does not divide a denominator; a prime
/// field file only over the same prime field.
template <Field K>
Multivector<K> to_multivector(const TrivectorFile& f, const K& field) {
  if (f.field.is_prime_field() && !(f.field == field.spec())) {
    throw InvalidInput("file over " + f.field.str() + " cannot be read over " +
                       field.spec().str());
  }
  Multivector<K> out(field, f.dim, 3);
  for (const auto& [s, c] : f.coeffs) out.add_term(s, field.from_rational(c));
  return out;
}

/// Canonical text of a multivector of any degree (degree 3 is the file format).
template <Field K>
std::string format_multivector(const Multivector<K>& w) {
  std::string out = "field " + w.field().spec().str() + "\n";
  out += "dim " + std::to_string(w.dim()) + "\n";
  for (const auto& [s, c] : w.lex_terms()) {
    for (int i : subset_indices(s)) out += std::to_string(i + 1) + " ";
    out += c.str() + "\n";
  }
  return out;
}

/// Inverse of MPoly::str.
template <Field K>
MPoly<K> parse_mpoly(const std::string& text, const K& field, int nvars,
                     const std::string& var = "x") {
  MPoly<K> out(field, nvars);
  std::istringstream in(text);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.size() == 1 && tok[0] == "0") return out;
  std::size_t i = 0;
  while (i < tok.size()) {
    const auto c = field.from_rational(parse_coefficient(tok[i++]));
    std::vector<int> exps(nvars, 0);
    while (i < tok.size() && tok[i] != "+") {
      const std::string& v = tok[i++];
      if (v.rfind(var, 0) != 0) throw InvalidInput("bad variable '" + v + "'");
      const auto caret = v.find('^');
      const std::string idx = v.substr(var.size(), caret - var.size());
      if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos ||
          idx.size() > 2) {
        throw InvalidInput("bad variable '" + v + "'");
      }
      const int k = std::stoi(idx);
      if (k < 1 || k > nvars) throw InvalidInput("variable out of range '" + v + "'");
      int e = 1;
      if (caret != std::string::npos) {
        const std::string es = v.substr(caret + 1);
        if (es.empty() || es.size() > 2 ||
            es.find_first_not_of("0123456789") != std::string::npos) {
          throw InvalidInput("bad exponent '" + v + "'");
        }
        e = std::stoi(es);
      }
      exps[k - 1] += e;
      if (exps[k - 1] > 15) throw InvalidInput("exponent too large");
    }
    out.add_term(Monomial::from_exponents(exps), c);
    if (i < tok.size()) {
      ++i;  // "+"
      if (i == tok.size()) throw InvalidInput("dangling '+'");
    }
  }
  return out;
}

/// Calls fn(field) with the RationalField or PrimeField named by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_prime_field()) return fn(PrimeField(spec.p));
  return fn(RationalField{});
}

/// FNV-1a, 64-bit, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xF];
  return out;
}

}  // namespace trivector
