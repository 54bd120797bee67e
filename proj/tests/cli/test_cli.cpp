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


// End-to-end checks of the command-line tool: golden outputs, exit codes and
// error reports.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

const std::string kFixtures = TRIVECTOR_FIXTURE_DIR;

struct Run {
  int status = -1;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TRIVECTOR_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

TEST(Cli, CobleCubicMatchesGoldenF7) {
  const auto r = cli("coble-cubic " + kFixtures + "/gamma_star_f7.txt --no-timing");
  ASSERT_EQ(r.status, 0);
  const auto j = r.json();
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["field"], "Fp:7");
  EXPECT_EQ(j["input_digest"], "67853b6f4e7aac2c");
  EXPECT_TRUE(j["results"]["all_identities_hold"].get<bool>());
  EXPECT_EQ(j["results"]["cubic"].get<std::string>(), slurp(kFixtures + "/gamma_star_f7.cubic"));
  EXPECT_FALSE(j.contains("timing"));
}

TEST(Cli, CobleCubicMatchesGoldenQ) {
  const auto r = cli("coble-cubic " + kFixtures + "/gamma_star_q.txt --no-timing");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.json()["results"]["cubic"].get<std::string>(), slurp(kFixtures + "/gamma_star_q.cubic"));
}

TEST(Cli, TimingPresentByDefault) {
  const auto r = cli("comul-rank " + kFixtures + "/gamma_star_q.txt");
  ASSERT_EQ(r.status, 0);
  const auto j = r.json();
  ASSERT_TRUE(j.contains("timing"));
  EXPECT_TRUE(j["timing"].contains("seconds"));
  EXPECT_EQ(j["results"]["comul_rank"], 9);
}

TEST(Cli, DegenerateInputExitsThree) {
  const auto r = cli("coble-cubic " + kFixtures + "/degenerate_e123.txt");
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(r.json()["error"]["kind"], "degenerate-trivector");
}

TEST(Cli, ParseErrorNamesLine) {
  const auto path = write_temp("bad_index.txt", "field Q\ndim 9\n# comment\n1 2 x 1\n");
  const auto r = cli("coble-cubic " + path);
  EXPECT_EQ(r.status, 2);
  const auto j = r.json();
  EXPECT_EQ(j["error"]["kind"], "parse-error");
  EXPECT_EQ(j["error"]["line"], 4);
}

TEST(Cli, UnorderedIndicesRejected) {
  const auto path = write_temp("unordered.txt", "field Fp:7\ndim 9\n2 1 3 1\n");
  const auto r = cli("coble-cubic " + path);
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.json()["error"]["line"], 3);
}

TEST(Cli, Char2DualRejectsOddPrimeFile) {
  const auto r = cli("char2-dual " + kFixtures + "/gamma_star_f7.txt");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.json()["error"]["kind"], "invalid-input");
}

TEST(Cli, LargeScanNeedsOptIn) {
  const auto r = cli("scan " + kFixtures + "/gamma_star_q.txt --p 7");
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, ScanAtTwo) {
  const auto r = cli("scan " + kFixtures + "/gamma_star_q.txt --p 2 --no-timing");
  ASSERT_EQ(r.status, 0);
  const auto counts = r.json()["results"]["counts"];
  EXPECT_EQ(counts["points_total"], 511);
  EXPECT_EQ(counts["sing_mismatches"], 0);
}

TEST(Cli, InstabilityWitness) {
  const auto r = cli("instability " + kFixtures + "/unstable_e123_e456.txt --q 2 --no-timing");
  ASSERT_EQ(r.status, 0);
  const auto res = r.json()["results"];
  EXPECT_EQ(res["status"], "unstable");
  EXPECT_TRUE(res["witness_verified"].get<bool>());
  EXPECT_EQ(res["min_weight"], 1);
  EXPECT_EQ(res["hyperdisc2"], 0);
}

TEST(Cli, VerlindeTablePasses) {
  const auto r = cli("verlinde --max-d 60");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, TraceFormOverF2) {
  const auto r = cli("trace-form --field Fp:2 --no-timing");
  ASSERT_EQ(r.status, 0);
  const auto res = r.json()["results"];
  EXPECT_EQ(res["hyperdisc2"], 1);
  EXPECT_EQ(res["stabilizer_dim"], 8);
}

TEST(Cli, RandomIsSeeded) {
  EXPECT_EQ(cli("random --seed 5 --dim 9").out, cli("random --seed 5 --dim 9").out);
  EXPECT_NE(cli("random --seed 5 --dim 9").out, cli("random --seed 6 --dim 9").out);
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(cli("no-such-command").status, 2);
}

}  // namespace
