/* Copyright 2026 The gamma-dde Authors
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

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gdde_cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gamma-dde");
  std::ostringstream out, err;
  const int code = gdde::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("gdde_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, SolveWritesMeshRows) {
  const Result r = run({"solve", "--problem", "linear", "--j", "1", "--h", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 202u);
  EXPECT_EQ(l[0], "t,x");
  EXPECT_EQ(l[1].substr(0, 4), "0,1");
}

TEST(Cli, ChainSolveHeaderNamesStages) {
  const Result f = run({"solve", "--method", "chain", "--variant", "fixed", "--j", "2.5", "--h", "1"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(lines(f.out)[0], "t,x,B1,B2,B3");
  EXPECT_EQ(lines(f.out).size(), 12u);
  const Result e = run({"solve", "--method", "chain", "--variant", "erlang", "--j", "2", "--h", "1"});
  EXPECT_EQ(lines(e.out)[0], "t,x,A1,A2");
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"epi", "simulate", "--seed", "5", "--out-dir",
                                         scratch_dir("det").string()};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"solve", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--j", "-1"}).code, 2);
  EXPECT_EQ(run({"solve", "--problem", "custom-linear"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "chain", "--variant", "fixed", "--j", "0.5"}).code, 2);
  EXPECT_EQ(run({"convergence", "--j", "2.5"}).code, 2);
  EXPECT_EQ(run({"solve", "--history", "sine:1"}).code, 2);
}

TEST(Cli, NumericalFailureExitsThree) {
  const Result r = run({"solve", "--problem", "custom-linear", "--alpha", "400", "--beta", "1",
                        "--T", "100", "--h", "0.5"});
  EXPECT_EQ(r.code, 3) << r.out.substr(0, 200);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto d = scratch_dir("cfg");
  {
    std::ofstream(d / "c.json") << R"({"problem": "nonlinear", "j": 3, "h": 0.5, "T": 5})";
  }
  const Result a = run({"solve", "--config", (d / "c.json").string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(lines(a.out).size(), 12u);
  const Result b = run({"solve", "--config", (d / "c.json").string(), "--h", "0.25"});
  EXPECT_EQ(lines(b.out).size(), 22u);
  {
    std::ofstream(d / "bad.json") << R"({"nope": 1})";
  }
  EXPECT_EQ(run({"solve", "--config", (d / "bad.json").string()}).code, 2);
}

TEST(Cli, ConvergenceSyntheticErrors) {
  const Result r = run({"convergence", "--h-list", "0.1,0.05,0.025", "--errors", "1e-4,6.25e-6,3.90625e-7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# slope=4"), std::string::npos) << r.out;
}

TEST(Cli, AnalysisCommandsEmitJson) {
  const Result m = run({"mgf-order", "--j", "2.5"});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto doc = nlohmann::json::parse(m.out);
  EXPECT_NEAR(doc["fixed"]["slope"].get<double>(), 3.0, 0.2);

  const Result p = run({"moment-poly", "--m", "4", "--fj", "0.3"});
  ASSERT_EQ(p.code, 0) << p.err;
  const auto poly = nlohmann::json::parse(p.out);
  EXPECT_TRUE(poly["gm_checks"]["passed"].get<bool>());
  EXPECT_EQ(poly["coefficients"].size(), 5u);

  const Result s = run({"survival", "--j", "2.5", "--t-max", "1", "--dt", "0.5", "--jump", "3"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(lines(s.out)[0], "t,gamma,fixed,smoothed");
  EXPECT_NE(s.out.find("# jump_smoothed="), std::string::npos);
}

TEST(Cli, CompareReportsDeviations) {
  const Result r = run({"compare", "--problem", "nonlinear", "--j", "3", "--T", "2", "--h", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out)[0], "t,gamma_dde,fixed,smoothed,erlang");
  EXPECT_NE(r.out.find("# max_dev_erlang="), std::string::npos);
}

TEST(Cli, EpiSimulateThenFit) {
  const auto d = scratch_dir("epi");
  ASSERT_EQ(run({"epi", "simulate", "--seed", "1", "--out-dir", d.string()}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(d / "cases.csv"));
  EXPECT_TRUE(std::filesystem::exists(d / "serial.csv"));
  const Result ll = run({"epi", "loglik", "--out-dir", d.string()});
  ASSERT_EQ(ll.code, 0) << ll.err;
  EXPECT_TRUE(std::isfinite(nlohmann::json::parse(ll.out)["loglik"].get<double>()));
  const Result fit = run({"epi", "fit", "--out-dir", d.string(), "--max-evals", "300"});
  ASSERT_EQ(fit.code, 0) << fit.err;
  const auto doc = nlohmann::json::parse(fit.out);
  for (const char* k : {"beta", "tau", "j", "eps", "loglik", "n_evals", "converged"}) {
    EXPECT_TRUE(doc.contains(k)) << k;
  }
  EXPECT_EQ(run({"epi", "fit", "--out-dir", (d / "missing").string()}).code, 2);
}
