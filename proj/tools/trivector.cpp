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

// Command-line front end. Every command writes one JSON report to stdout
// (verlinde defaults to a table); diagnostics go to stderr.
//
// Exit codes: 0 success, 2 bad input or parse error, 3 degenerate trivector,
// 4 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trivector/trivector.hpp"

namespace {

using json = nlohmann::json;
using namespace trivector;

constexpr int kSchemaVersion = 1;

struct Options {
  std::string file;
  std::string field;
  std::uint32_t p = 5;
  std::uint32_t q = 2;
  std::size_t count = 20;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  int max_d = 60;
  int dim = 9;
  int max_coeff = 6;
  bool allow_large = false;
  bool no_timing = false;
  bool json_out = false;
};

struct Input {
  TrivectorFile parsed;
  std::string digest;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  return {parse_trivector(bytes), fnv1a_hex(bytes)};
}

/// Field from --field, else from the file.
FieldSpec choose_field(const Options& o, const Input& in) {
  return o.field.empty() ? in.parsed.field : FieldSpec::parse(o.field);
}

json point_json(const std::vector<std::uint32_t>& x) { return json(x); }

template <Field K>
json elems_json(const std::vector<typename K::Elem>& v) {
  json out = json::array();
  for (const auto& c : v) {
    if constexpr (std::is_same_v<K, PrimeField>) {
      out.push_back(c.value());
    } else {
      out.push_back(c.str());
    }
  }
  return out;
}

template <Field K>
json matrix_rows_json(const Matrix<K>& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    std::vector<typename K::Elem> row;
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(elems_json<K>(row));
  }
  return out;
}

json report(const std::string& command, const std::string& digest,
            const std::string& field, json results) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"input_digest", digest},
          {"field", field},
          {"results", std::move(results)}};
}

// --- commands ---------------------------------------------------------------

json cmd_coble_cubic(const Options& o) {
  const auto in = load(o.file);
  const auto spec = choose_field(o, in);
  return with_field(spec, [&](auto field) {
    const auto gamma = to_multivector(in.parsed, field);
    const auto c = coble_cubic(gamma);
    json r;
    r["cubic"] = c.cubic.str();
    r["pivot"] = c.pivot + 1;
    r["identities"] = json(std::vector<bool>(c.identities.begin(), c.identities.end()));
    r["all_identities_hold"] = c.all_identities_hold();
    r["terms"] = c.cubic.size();
    return report("coble-cubic", in.digest, spec.str(), r);
  });
}

Multivector<PrimeField> load_prime(const Input& in, std::uint32_t p) {
  return to_multivector(in.parsed, PrimeField(p));
}

void check_scan_prime(const Options& o) {
  if (o.p != 2 && o.p != 3 && o.p != 5 && o.p != 7) {
    throw InvalidInput("--p must be one of 2, 3, 5, 7");
  }
  if (o.p == 7 && !o.allow_large) {
    throw InvalidInput("p = 7 scans 6.7M points; pass --allow-large");
  }
  if (o.p == 3) {
    std::cerr << "warning: in characteristic 3 the gradient of a cubic is "
                 "degenerate; singular-locus comparisons are not meaningful\n";
  }
}

json cmd_scan(const Options& o) {
  check_scan_prime(o);
  const auto in = load(o.file);
  const auto gamma = load_prime(in, o.p);
  const auto cubic = coble_cubic(gamma);
  const auto s = scan_loci(gamma, cubic.cubic, o.threads);
  const auto [lo, hi] = weil_interval_surface(o.p);
  json counts = {{"points_total", s.points_total},
                 {"points_Y", s.points_Y},
                 {"points_X", s.points_X},
                 {"rank2_count", s.rank2_count},
                 {"cubic_mismatches", s.cubic_mismatch_count},
                 {"sing_mismatches", s.sing_mismatch_count}};
  json hist;
  for (int i = 0; i < 5; ++i) hist[std::to_string(2 * i)] = s.rank_histogram[i];
  counts["rank_histogram"] = hist;
  json mism = json::array();
  for (const auto& m : s.sing_mismatches) mism.push_back(point_json(m));
  json xs = json::array();
  for (const auto& m : s.first_X_points) xs.push_back(point_json(m));
  json r = {{"cubic", cubic.cubic.str()},
            {"counts", counts},
            {"mismatches", mism},
            {"first_X_points", xs},
            {"weil_interval", {lo, hi}},
            {"points_X_in_weil_interval", s.points_X >= lo && s.points_X <= hi},
            {"certificates", json::array()}};
  return report("scan", in.digest, FieldSpec::prime(o.p).str(), r);
}

json cmd_duality(const Options& o) {
  const auto in = load(o.file);
  const auto gamma = load_prime(in, o.p);
  const auto cubic = coble_cubic(gamma).cubic;
  const auto pts = smooth_points(gamma, cubic, o.count);
  json certs = json::array();
  std::size_t valid = 0;
  for (const auto& y : pts) {
    const auto c = duality_certificate(gamma, cubic, std::span<const Fp>(y));
    valid += c.valid();
    json kern = json::array();
    for (const auto& v : c.kernel) kern.push_back(elems_json<PrimeField>(v));
    certs.push_back({{"y", elems_json<PrimeField>(c.y)},
                     {"rank_at_y", c.rank_at_y},
                     {"kernel", kern},
                     {"h", elems_json<PrimeField>(c.h)},
                     {"checks",
                      {{"on_cubic", c.on_cubic},
                       {"smooth", c.smooth},
                       {"kernel_in_tangent", c.kernel_in_tangent},
                       {"witness_vanishing", c.witness_vanishing}}},
                     {"valid", c.valid()}});
  }
  json r = {{"cubic", cubic.str()},
            {"counts", {{"requested", o.count}, {"found", pts.size()}, {"valid", valid}}},
            {"certificates", certs},
            {"mismatches", json::array()}};
  return report("duality", in.digest, FieldSpec::prime(o.p).str(), r);
}

json cmd_instability(const Options& o) {
  const auto in = load(o.file);
  const auto w = load_prime(in, o.q);
  const auto v = is_unstable_bruteforce(w, o.threads);
  json r = {{"status", v.unstable() ? "unstable" : "no_witness_found"},
            {"witness_rows", nullptr},
            {"hyperdisc2", nullptr},
            {"stabilizer_dim", stabilizer_dim(w)},
            {"min_weight", nullptr}};
  if (v.witness) {
    r["witness_rows"] = matrix_rows_json(*v.witness);
    r["witness_verified"] = check_witness(w, *v.witness);
    if (w.dim() == 8) {
      const auto mw = min_1ps_weight(w, annihilator(*v.witness));
      if (mw) r["min_weight"] = *mw;
    }
  }
  if (o.q == 2 && w.dim() == 8) r["hyperdisc2"] = hyperdisc2(w).value();
  return report("instability", in.digest, FieldSpec::prime(o.q).str(), r);
}

json cmd_hyperdisc2(const Options& o) {
  const auto in = load(o.file);
  const auto w = load_prime(in, 2);
  json r = {{"hyperdisc2", hyperdisc2(w).value()}};
  return report("hyperdisc2", in.digest, "Fp:2", r);
}

json cmd_stabdim(const Options& o) {
  const auto in = load(o.file);
  const auto spec = choose_field(o, in);
  return with_field(spec, [&](auto field) {
    const auto w = to_multivector(in.parsed, field);
    return report("stabdim", in.digest, spec.str(),
                  {{"stabilizer_dim", stabilizer_dim(w)}, {"dim", w.dim()}});
  });
}

json cmd_comul_rank(const Options& o) {
  const auto in = load(o.file);
  const auto spec = choose_field(o, in);
  return with_field(spec, [&](auto field) {
    const auto w = to_multivector(in.parsed, field);
    return report("comul-rank", in.digest, spec.str(),
                  {{"comul_rank", comul_rank(w)}});
  });
}

json cmd_char2_dual(const Options& o) {
  const auto in = load(o.file);
  const auto gamma = load_prime(in, 2);
  const auto dual = char2_dual_cubic(gamma);
  const auto eq = char2_equivalence(gamma, dual.cubic);
  json mism = json::array();
  for (const auto& m : eq.mismatches) mism.push_back(point_json(m));
  json r = {{"cubic", dual.cubic.str("u")},
            {"all_identities_hold", dual.all_identities_hold()},
            {"counts",
             {{"points", eq.points},
              {"on_dual_cubic", eq.on_dual_cubic},
              {"hyperdisc2_zero", eq.hyperdisc_zero},
              {"mismatches", eq.mismatch_count}}},
            {"mismatches", mism}};
  return report("char2-dual", in.digest, "Fp:2", r);
}

json cmd_trace_form(const Options& o) {
  const auto spec = o.field.empty() ? FieldSpec::rationals() : FieldSpec::parse(o.field);
  return with_field(spec, [&](auto field) {
    using K = decltype(field);
    const auto alpha = trace_form(3, field);
    json coeffs = json::array();
    for (Subset s : lex_subsets(8, 3)) {
      const auto idx = subset_indices(s);
      coeffs.push_back({idx[0] + 1, idx[1] + 1, idx[2] + 1,
                        elems_json<K>({alpha.coeffs.coeff(s)})[0]});
    }
    json r = {{"coefficients", coeffs},
              {"stabilizer_dim", stabilizer_dim(alpha.coeffs)}};
    if constexpr (std::is_same_v<K, PrimeField>) {
      if (spec.characteristic() == 2) r["hyperdisc2"] = hyperdisc2(alpha.coeffs).value();
    }
    return report("trace-form", "", spec.str(), r);
  });
}

Multivector<RationalField> random_trivector(int dim, int max_coeff, Rng& rng) {
  RationalField q;
  Multivector<RationalField> g(q, dim, 3);
  for (Subset s : lex_subsets(dim, 3)) g.add_term(s, q.from_int(rng.between(0, max_coeff)));
  return g;
}

/// Prints a seeded random trivector with integer coefficients in
/// [0, max_coeff] in the file format, reduced to --field if given.
std::string cmd_random(const Options& o) {
  Rng rng(o.seed);
  const auto g = random_trivector(o.dim, o.max_coeff, rng);
  const auto spec = o.field.empty() ? FieldSpec::rationals() : FieldSpec::parse(o.field);
  return with_field(spec, [&](auto field) {
    TrivectorFile f{FieldSpec::rationals(), o.dim, {}};
    for (const auto& [s, c] : g.terms()) f.coeffs[s] = c.value();
    return format_multivector(to_multivector(f, field));
  });
}

/// Rejection sampling for a trivector in dimension 9 that is nondegenerate
/// over Q and F_7 and passes the full F_5 scan, the first 20 duality
/// certificates, and comul_rank = 9. Prints the accepted trivector.
std::string cmd_find_fixture(const Options& o) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t seed = o.seed + attempt;
    Rng rng(seed);
    const auto g = random_trivector(9, o.max_coeff, rng);
    TrivectorFile f{FieldSpec::rationals(), 9, {}};
    for (const auto& [s, c] : g.terms()) f.coeffs[s] = c.value();
    try {
      const auto q = coble_cubic(g);
      const auto g7 = to_multivector(f, PrimeField(7));
      const auto c7 = coble_cubic(g7);
      const bool reduces = map_coefficients(q.cubic, PrimeField(7)) == c7.cubic;
      const auto g5 = to_multivector(f, PrimeField(5));
      const auto c5 = coble_cubic(g5).cubic;
      const auto s = scan_loci(g5, c5, o.threads);
      const auto [lo, hi] = weil_interval_surface(5);
      std::size_t valid = 0;
      for (const auto& y : smooth_points(g5, c5, 20))
        valid += duality_certificate(g5, c5, std::span<const Fp>(y)).valid();
      const bool ok = q.all_identities_hold() && c7.all_identities_hold() &&
                      reduces && s.sing_mismatch_count == 0 &&
                      s.cubic_mismatch_count == 0 && s.rank2_count == 0 &&
                      s.points_X >= lo && s.points_X <= hi && valid == 20 &&
                      comul_rank(g7) == 9;
      std::cerr << "seed " << seed << ": X(F_5) = " << s.points_X
                << ", singular mismatches " << s.sing_mismatch_count
                << ", valid certificates " << valid << (ok ? " accepted" : "")
                << "\n";
      if (ok) {
        return "# seed " + std::to_string(seed) + ", coefficients in [0, " +
               std::to_string(o.max_coeff) + "]\n" + format_multivector(g);
      }
    } catch (const DegenerateTrivector&) {
      std::cerr << "seed " << seed << ": degenerate\n";
    }
  }
}

/// Seeded search over F_2 for a trivector in dimension 9 whose dual cubic
/// is nondegenerate and matches hyperdisc2 on all 511 points.
std::string cmd_find_fixture2(const Options& o) {
  PrimeField f2(2);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t seed = o.seed + attempt;
    Rng rng(seed);
    Multivector<PrimeField> g(f2, 9, 3);
    for (Subset s : lex_subsets(9, 3)) g.add_term(s, f2.from_int(rng.between(0, 1)));
    try {
      const auto d = char2_dual_cubic(g);
      const auto eq = char2_equivalence(g, d.cubic);
      std::cerr << "seed " << seed << ": mismatches " << eq.mismatch_count << "\n";
      if (d.all_identities_hold() && eq.mismatch_count == 0) {
        return "# seed " + std::to_string(seed) + "\n" + format_multivector(g);
      }
    } catch (const DegenerateTrivector&) {
      std::cerr << "seed " << seed << ": degenerate\n";
    }
  }
}

int cmd_verlinde(const Options& o) {
  const auto spec = GradedRingSpec::standard();
  bool pass = true;
  json rows = json::array();
  std::ostringstream table;
  table << "d\thilbert\tverlinde\n";
  for (int d = 0; d <= o.max_d; ++d) {
    const mpz_class h = hilbert_coefficient(spec, d);
    const mpq_class v = verlinde_value(d);
    pass &= mpq_class(h) == v;
    table << d << "\t" << h.get_str() << "\t" << v.get_str() << "\n";
    rows.push_back({d, h.get_str(), v.get_str()});
  }
  for (int d = -5; d <= -1; ++d) pass &= verlinde_value(d) == 0;
  if (o.json_out) {
    std::cout << report("verlinde", "", "Q",
                        {{"rows", rows}, {"max_d", o.max_d}, {"pass", pass}})
                     .dump(2)
              << "\n";
  } else {
    std::cout << table.str() << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 4;
}

int exit_code(const Error& e) {
  const std::string kind = e.kind();
  if (kind == "degenerate-trivector") return 3;
  if (kind == "parse-error" || kind == "invalid-input" ||
      kind == "unsupported-characteristic" || kind == "division-by-zero") {
    return 2;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with trivectors"};
  app.require_subcommand(1);
  Options o;

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "trivector file")->required();
    c->add_flag("--no-timing", o.no_timing, "omit the timing field");
    return c;
  };
  auto* coble = file_cmd("coble-cubic", "print the cubic P");
  coble->add_option("--field", o.field, "Q or Fp:p (default: the file's field)");
  auto* scan = file_cmd("scan", "classify every point of P^8(F_p) by rank");
  scan->add_option("--p", o.p, "prime in {2,3,5,7}");
  scan->add_option("--threads", o.threads);
  scan->add_flag("--allow-large", o.allow_large, "allow p = 7");
  scan->add_option("--seed", o.seed, "unused; accepted for uniformity");
  auto* duality = file_cmd("duality", "duality certificates at smooth points");
  duality->add_option("--p", o.p);
  duality->add_option("--count", o.count);
  auto* inst = file_cmd("instability", "exhaustive search for a witness");
  inst->add_option("--q", o.q, "2 or 3");
  inst->add_option("--threads", o.threads);
  auto* hd = file_cmd("hyperdisc2", "Pfaffian of N(Q(w)) over F_2");
  auto* stab = file_cmd("stabdim", "infinitesimal stabilizer dimension");
  stab->add_option("--field", o.field);
  auto* comul = file_cmd("comul-rank", "rank of x -> i_x gamma");
  comul->add_option("--field", o.field);
  auto* c2 = file_cmd("char2-dual", "dual cubic over F_2 and its check");

  auto* tf = app.add_subcommand("trace-form", "coefficients of the trace form");
  tf->add_option("--field", o.field);
  tf->add_flag("--no-timing", o.no_timing);
  auto* verl = app.add_subcommand("verlinde", "Hilbert function vs closed form");
  verl->add_option("--max-d", o.max_d)->check(CLI::Range(0, 10000));
  verl->add_flag("--json", o.json_out);
  verl->add_flag("--no-timing", o.no_timing);
  auto* rnd = app.add_subcommand("random", "seeded random trivector");
  rnd->add_option("--seed", o.seed);
  rnd->add_option("--dim", o.dim)->check(CLI::Range(3, 16));
  rnd->add_option("--max-coeff", o.max_coeff)->check(CLI::Range(0, 1000000));
  rnd->add_option("--field", o.field);
  auto* ff = app.add_subcommand("find-fixture", "search for a stable fixture");
  ff->add_option("--seed", o.seed);
  ff->add_option("--max-coeff", o.max_coeff)->check(CLI::Range(1, 1000000));
  ff->add_option("--threads", o.threads);
  auto* ff2 = app.add_subcommand("find-fixture2", "search for an F_2 fixture");
  ff2->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto start = std::chrono::steady_clock::now();
    json out;
    if (verl->parsed()) return cmd_verlinde(o);
    if (rnd->parsed()) {
      std::cout << cmd_random(o);
      return 0;
    }
    if (ff->parsed()) {
      std::cout << cmd_find_fixture(o);
      return 0;
    }
    if (ff2->parsed()) {
      std::cout << cmd_find_fixture2(o);
      return 0;
    }
    if (coble->parsed()) out = cmd_coble_cubic(o);
    else if (scan->parsed()) out = cmd_scan(o);
    else if (duality->parsed()) out = cmd_duality(o);
    else if (inst->parsed()) out = cmd_instability(o);
    else if (hd->parsed()) out = cmd_hyperdisc2(o);
    else if (stab->parsed()) out = cmd_stabdim(o);
    else if (comul->parsed()) out = cmd_comul_rank(o);
    else if (c2->parsed()) out = cmd_char2_dual(o);
    else if (tf->parsed()) out = cmd_trace_form(o);
    if (!o.no_timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      out["timing"] = {{"seconds", dt.count()}, {"threads", o.threads}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    json err = {{"schema_version", kSchemaVersion},
                {"command", command},
                {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["error"]["line"] = pe->line();
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}
