// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtomo_cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace qtomo;
using namespace qtomo::cli;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args,
              EnvLookup env = [](const char*) -> std::optional<std::string> { return std::nullopt; }) {
  args.insert(args.begin(), "qtomo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, env);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args) {
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  return out;
}

void expect_schema(const json& r, const std::string& command) {
  std::set<std::string> keys;
  for (auto it = r.begin(); it != r.end(); ++it) keys.insert(it.key());
  EXPECT_EQ(keys, (std::set<std::string>{"command", "inputs", "steps", "stokes", "reconstruction", "metrics", "seed"}));
  EXPECT_EQ(r["command"], command);
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(NAN), "null");
  std::ostringstream os;
  write_json(json{{"x", 0.1}, {"n", 3}}, os);
  EXPECT_NE(os.str().find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(os.str().find("\"n\": 3"), std::string::npos);
}

TEST(CsvTable, QuotesAndLineEndings) {
  CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  t.add_row({"say \"hi\"", "2"});
  std::ostringstream os;
  t.write(os);
  EXPECT_EQ(os.str(), "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",2\n");
  EXPECT_THROW(t.add_row({"1"}), std::logic_error);
}

TEST(CmdExact, EquatorialState) {
  const json r = run_json({"exact", "--theta", "1.5707963", "--phi", "1.5707963"});
  expect_schema(r, "exact");
  EXPECT_NEAR(r["stokes"]["s0"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(r["stokes"]["s1"].get<double>(), 0.0, 1e-6);
  EXPECT_NEAR(r["stokes"]["s2"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(r["stokes"]["s3"].get<double>(), 0.0, 1e-6);
  EXPECT_LE(r["metrics"]["residual"].get<double>(), 1e-12);
  ASSERT_EQ(r["steps"].size(), 3u);
  for (const auto& s : r["steps"]) EXPECT_EQ(s["payoff_bob"].get<double>(), -s["payoff_alice"].get<double>());
  EXPECT_EQ(r["steps"][0]["label"], "S2");
  EXPECT_TRUE(r["seed"].is_null());
}

TEST(CmdExact, PoleAndDegrees) {
  const json r = run_json({"exact", "--theta", "0", "--phi", "0"});
  EXPECT_EQ(r["stokes"]["s3"].get<double>(), 1.0);
  EXPECT_NEAR(r["stokes"]["s1"].get<double>(), 0.0, 1e-15);

  const json d = run_json({"exact", "--theta", "90", "--phi", "0", "--degrees"});
  EXPECT_NEAR(d["stokes"]["s1"].get<double>(), 1.0, 1e-12);
}

TEST(CmdExact, ValidationErrors) {
  const auto bad = run({"exact", "--theta", "4.0", "--phi", "0"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("theta"), std::string::npos);
  EXPECT_EQ(run({"exact", "--phi", "0"}).code, 2);
  EXPECT_EQ(run({"exact", "--theta", "abc", "--phi", "0"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"exact", "--theta", "1", "--phi", "0", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto sub_help = run({"sample", "--help"});
  EXPECT_EQ(sub_help.code, 0);
  EXPECT_NE(sub_help.out.find("--shots"), std::string::npos);
}

TEST(CmdExact, CsvColumns) {
  const auto r = run({"exact", "--theta", "0.3", "--phi", "0.2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  const auto header = split_csv(lines[0]);
  EXPECT_EQ(header.size(), split_csv(lines[1]).size());
  EXPECT_NE(std::find(header.begin(), header.end(), "rho01_im"), header.end());
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(CmdSample, PoleStateAndSeedEcho) {
  const json r = run_json({"sample", "--theta", "0", "--phi", "0", "--shots", "1000", "--seed", "7"});
  expect_schema(r, "sample");
  EXPECT_EQ(r["stokes"]["s3"].get<double>(), 1.0);
  EXPECT_GE(r["metrics"]["fidelity"].get<double>(), 0.99);
  EXPECT_EQ(r["seed"].get<std::uint64_t>(), 7u);
  ASSERT_EQ(r["steps"].size(), 3u);
  for (const auto& s : r["steps"]) {
    EXPECT_EQ(s["estimate"]["shots"].get<std::int64_t>(), 1000);
    EXPECT_LE(s["estimate"]["std_error"].get<double>(), 1.0 / std::sqrt(1000.0) + 1e-12);
  }
  EXPECT_GE(r["reconstruction"]["rho"][0][0][0].get<double>(), 0.99);
}

TEST(CmdSample, ByteIdenticalRepeats) {
  const std::vector<std::string> args{"sample", "--theta", "1.2", "--phi", "3.4", "--shots", "5000", "--seed", "99"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"sample", "--theta", "1.2", "--phi", "3.4", "--shots", "5000", "--seed", "100"}).out);
}

TEST(CmdSample, MatchesLibraryAndHighShotFidelity) {
  const json r = run_json({"sample", "--theta", "2.0", "--phi", "0.6", "--shots", "100000", "--seed", "3"});
  const auto lib = run_tomography({2.0, 0.6}, 100000, 3);
  EXPECT_EQ(r["metrics"]["fidelity"].get<double>(), *lib.fidelity);
  EXPECT_GE(r["metrics"]["fidelity"].get<double>(), 0.999);
  EXPECT_EQ(r["stokes"]["s2"].get<double>(), lib.stokes_est.s2);
}

TEST(CmdSample, SeedSources) {
  auto env = [](const char* name) -> std::optional<std::string> {
    if (std::string(name) == "QTOMO_SEED") return "12345";
    return std::nullopt;
  };
  const auto from_env = run({"sample", "--theta", "1", "--phi", "1", "--shots", "10"}, env);
  ASSERT_EQ(from_env.code, 0);
  EXPECT_EQ(json::parse(from_env.out)["seed"].get<std::uint64_t>(), 12345u);

  const auto overridden = run({"sample", "--theta", "1", "--phi", "1", "--shots", "10", "--seed", "5"}, env);
  EXPECT_EQ(json::parse(overridden.out)["seed"].get<std::uint64_t>(), 5u);

  const auto entropy = run({"sample", "--theta", "1", "--phi", "1", "--shots", "10"});
  ASSERT_EQ(entropy.code, 0);
  EXPECT_TRUE(json::parse(entropy.out)["seed"].is_number_unsigned());

  auto bad_env = [](const char*) -> std::optional<std::string> { return "not-a-number"; };
  EXPECT_EQ(run({"sample", "--theta", "1", "--phi", "1", "--shots", "10"}, bad_env).code, 2);
  EXPECT_EQ(run({"sample", "--theta", "1", "--phi", "1", "--seed", "-4"}).code, 2);
}

TEST(CmdSample, ValidatesShotsAndTrials) {
  EXPECT_EQ(run({"sample", "--theta", "1", "--phi", "1", "--shots", "0", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"sample", "--theta", "1", "--phi", "1", "--trials", "0", "--seed", "1"}).code, 2);
  const json r = run_json({"sample", "--theta", "1", "--phi", "1", "--shots", "500", "--trials", "5", "--seed", "1"});
  EXPECT_EQ(r["metrics"]["trials"].get<int>(), 5);
  EXPECT_GT(r["metrics"]["median_fidelity"].get<double>(), 0.9);
}

TEST(CmdSweep, ExactGridCsv) {
  const auto r = run({"sweep", "--theta-steps", "3", "--phi-steps", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "theta,phi,s1,s2,s3,s1_hat,s2_hat,s3_hat,fidelity");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    ASSERT_EQ(f.size(), 9u);
    const double theta = std::stod(f[0]), phi = std::stod(f[1]);
    const auto ref = qtomo::testing::analytic_stokes(theta, phi);
    EXPECT_NEAR(std::stod(f[2]), ref.s1, 1e-12);
    EXPECT_NEAR(std::stod(f[3]), ref.s2, 1e-12);
    EXPECT_NEAR(std::stod(f[4]), ref.s3, 1e-12);
    EXPECT_NEAR(std::stod(f[5]), ref.s1, 1e-12);
    EXPECT_NEAR(std::stod(f[6]), ref.s2, 1e-12);
    EXPECT_NEAR(std::stod(f[7]), ref.s3, 1e-12);
    EXPECT_NEAR(std::stod(f[8]), 1.0, 1e-12);
  }
}

TEST(CmdSweep, SampledCellSeedsDiffer) {
  const json r = run_json({"sweep", "--theta-steps", "4", "--phi-steps", "5", "--shots", "200", "--seed", "8"});
  expect_schema(r, "sweep");
  const auto& rows = r["metrics"]["rows"];
  ASSERT_EQ(rows.size(), 20u);
  std::set<std::uint64_t> seeds;
  for (const auto& row : rows) seeds.insert(row["seed"].get<std::uint64_t>());
  EXPECT_EQ(seeds.size(), 20u);
  EXPECT_EQ(r["seed"].get<std::uint64_t>(), 8u);
}

TEST(CmdSweep, GridAndIoErrors) {
  EXPECT_EQ(run({"sweep", "--theta-steps", "1", "--phi-steps", "3"}).code, 2);
  EXPECT_EQ(run({"sweep", "--out", "/nonexistent-dir/qtomo/out.csv"}).code, 3);

  const auto path = std::filesystem::temp_directory_path() / "qtomo_sweep_test.csv";
  const auto r = run({"sweep", "--theta-steps", "2", "--phi-steps", "2", "--format", "csv", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "theta,phi,s1,s2,s3,s1_hat,s2_hat,s3_hat,fidelity");
  std::filesystem::remove(path);
}

TEST(CmdReconstruct, Examples) {
  const json pole = run_json({"reconstruct", "--s1", "0", "--s2", "0", "--s3", "1"});
  expect_schema(pole, "reconstruct");
  EXPECT_EQ(pole["reconstruction"]["rho"][0][0][0].get<double>(), 1.0);
  EXPECT_EQ(pole["reconstruction"]["rho"][1][1][0].get<double>(), 0.0);
  EXPECT_FALSE(pole["reconstruction"]["projected"].get<bool>());

  const json proj = run_json({"reconstruct", "--s1", "1.2", "--s2", "0", "--s3", "0"});
  EXPECT_TRUE(proj["reconstruction"]["projected"].get<bool>());
  EXPECT_NEAR(proj["reconstruction"]["bloch_norm"].get<double>(), 1.2, 1e-15);
  EXPECT_EQ(proj["reconstruction"]["rho"][0][1][0].get<double>(), 0.5);
  EXPECT_EQ(proj["reconstruction"]["rho"][0][0][0].get<double>(), 0.5);

  const json centre = run_json({"reconstruct", "--s1", "0", "--s2", "0", "--s3", "0"});
  EXPECT_EQ(centre["reconstruction"]["rho"][0][0][0].get<double>(), 0.5);
  EXPECT_EQ(centre["reconstruction"]["rho"][0][1][0].get<double>(), 0.0);

  EXPECT_EQ(run({"reconstruct", "--s1", "0", "--s2", "0"}).code, 2);
  EXPECT_EQ(run({"reconstruct", "--s1", "x", "--s2", "0", "--s3", "0"}).code, 2);
}

TEST(CmdBloch, PlanesAndConsistencyWithExact) {
  const json eq = run_json({"bloch", "--theta", "1.5707963267948966", "--phi", "1.5707963267948966"});
  expect_schema(eq, "bloch");
  const auto& planes = eq["metrics"]["planes"];
  ASSERT_EQ(planes.size(), 3u);
  EXPECT_EQ(planes[0]["axis"], "z");
  EXPECT_NEAR(planes[0]["offset"].get<double>(), 0.0, 1e-15);
  EXPECT_EQ(planes[1]["axis"], "y");
  EXPECT_NEAR(planes[1]["offset"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(planes[2]["axis"], "x");
  EXPECT_NEAR(planes[2]["offset"].get<double>(), 0.0, 1e-15);

  const json north = run_json({"bloch", "--theta", "0", "--phi", "0"});
  EXPECT_EQ(north["metrics"]["point"]["z"].get<double>(), 1.0);

  qtomo::testing::Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const PureQubit q = rng.pure_qubit();
    const std::string t = format_number(q.theta()), p = format_number(q.phi());
    const auto exact = run({"exact", "--theta", t, "--phi", p, "--format", "csv"});
    const auto bloch = run({"bloch", "--theta", t, "--phi", p, "--format", "csv"});
    const auto e = split_csv(lines_of(exact.out)[1]);
    const auto b = split_csv(lines_of(bloch.out)[1]);
    // exact: s1,s2,s3 at columns 3..5; bloch: x,y,z at columns 5..7.
    EXPECT_EQ(e[3], b[5]);
    EXPECT_EQ(e[4], b[6]);
    EXPECT_EQ(e[5], b[7]);
  }
}

}  // namespace
