/* Copyright 2026 The dltlaws Authors
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
#include <sstream>

#include <nlohmann/json.hpp>

#include "dltlaws_cli.hpp"

namespace dlt::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dltlaws_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(CliSpeedup, PublishedPoint) {
  const auto r = invoke({"speedup", "--platform", "table1-homo", "-n", "30", "--model", "2", "-f", "0.8",
                         "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["integrated"].get<double>(), 4.2463768115942028986, 1e-12);
  EXPECT_NEAR(j["s_dlt"].get<double>(), 22.538461538461538, 1e-12);
  EXPECT_NEAR(j["reference"].get<double>(), 4.4285714285714285714, 1e-12);
}

TEST(CliSpeedup, TextOutputAndSerialWorkload) {
  const auto r = invoke({"speedup", "--platform", "table1-hetero", "-n", "30", "--model", "2", "-f", "0"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("integrated: 1\n"), std::string::npos) << r.out;
}

TEST(CliSpeedup, LawsAndReverse) {
  auto value = [](const std::vector<std::string>& args, const char* key) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, kOk) << r.err;
    return nlohmann::json::parse(r.out)[key].get<double>();
  };
  const std::vector<std::string> base{"speedup", "--platform", "table1-homo", "-n", "20", "--model", "3",
                                      "-f", "1", "--format", "json"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  EXPECT_NEAR(value(with({"--law", "gustafson"}), "integrated"), 21.0, 1e-12);
  EXPECT_NEAR(value(with({"--law", "power", "--gamma", "0.5"}), "integrated"), 21.0, 1e-12);
  EXPECT_NEAR(value(with({"--reverse"}), "speedup"), 21.0, 1e-12);
  const auto hetero = invoke({"speedup", "--platform", "table1-hetero", "-n", "5", "--model", "2", "-f", "0.5",
                              "--reverse"});
  EXPECT_EQ(hetero.code, kConfigError);
}

TEST(CliSpeedup, InfeasibleModel1) {
  const fs::path dir = scratch("infeasible");
  std::ofstream(dir / "p.json") << R"({"omega0": 1, "t_cp": 1, "t_cm": 1, "children": [{"omega": 1, "z": 2}]})";
  const auto r = invoke({"speedup", "--platform", (dir / "p.json").string(), "--model", "1", "-f", "0.5"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_NE(r.err.find("child 1"), std::string::npos);
}

TEST(CliSpeedup, ConfigErrors) {
  EXPECT_EQ(invoke({"speedup", "--platform", "table1-homo", "--model", "4", "-f", "0.5"}).code, kConfigError);
  EXPECT_EQ(invoke({"speedup", "--platform", "table1-homo", "--model", "2", "-f", "1.5"}).code, kConfigError);
  EXPECT_EQ(invoke({"speedup", "--platform", "table1-homo", "-n", "51", "--model", "2", "-f", "0.5"}).code,
            kConfigError);
  EXPECT_EQ(invoke({"speedup", "--model", "2", "-f", "0.5"}).code, kConfigError);
  EXPECT_EQ(invoke({}).code, kConfigError);
  EXPECT_EQ(invoke({"speedup", "--platform", "/nonexistent/p.json", "--model", "2", "-f", "0.5"}).code, kIoError);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(CliPartition, SingleChildAndRootOnly) {
  auto r = invoke({"partition", "--platform", "table1-homo", "-n", "1", "--model", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["alphas"][0].get<double>(), 0.58208955223880597015, 1e-15);
  EXPECT_NEAR(j["alphas"][1].get<double>(), 0.41791044776119402985, 1e-15);

  r = invoke({"partition", "--platform", "table1-homo", "-n", "0", "--model", "1"});
  ASSERT_EQ(r.code, kOk);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["alphas"], nlohmann::json::array({1.0}));
}

TEST(CliPartition, NormalizedForAllModels) {
  for (const char* model : {"1", "2", "3"}) {
    const auto r = invoke({"partition", "--platform", "table1-hetero", "--model", model});
    ASSERT_EQ(r.code, kOk);
    const auto j = nlohmann::json::parse(r.out);
    double total = 0.0;
    for (const auto& a : j["alphas"]) total += a.get<double>();
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(CliPartition, ReportsOrderOfShuffledFile) {
  const fs::path dir = scratch("order");
  std::ofstream(dir / "p.json")
      << R"({"omega0": 4, "t_cp": 1, "t_cm": 1, "children": [{"omega": 5, "z": 3}, {"omega": 4, "z": 2}]})";
  const auto r = invoke({"partition", "--platform", (dir / "p.json").string(), "--model", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["order"], nlohmann::json::array({1, 0}));
}

TEST(CliGantt, JsonAndSvg) {
  auto r = invoke({"gantt", "--platform", "table1-homo", "-n", "1", "--model", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["communication"][0].get<double>(), 0.0);
  EXPECT_NEAR(j[1]["communication"][1].get<double>(), 1.3791044776119402985, 1e-14);

  r = invoke({"gantt", "--platform", "table1-homo", "-n", "1", "--model", "2", "--format", "svg"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  EXPECT_NE(r.out.find("P1"), std::string::npos);
  EXPECT_EQ(r.out, invoke({"gantt", "--platform", "table1-homo", "-n", "1", "--model", "2", "--format", "svg"}).out);
}

TEST(CliGantt, Model3ComputationStartsAtZero) {
  const auto r = invoke({"gantt", "--platform", "table1-hetero", "-n", "10", "--model", "3"});
  ASSERT_EQ(r.code, kOk);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& e : j) EXPECT_EQ(e["computation"][0].get<double>(), 0.0);
}

TEST(CliVerify, AcceptsGeneratedRejectsCorrupted) {
  const auto g = invoke({"gantt", "--platform", "table1-hetero", "-n", "5", "--model", "1"});
  ASSERT_EQ(g.code, kOk);
  auto ok = invoke({"verify", "--platform", "table1-hetero", "-n", "5", "--model", "1", "--gantt", "-"}, g.out);
  EXPECT_EQ(ok.code, kOk) << ok.out;
  EXPECT_EQ(ok.out.rfind("OK", 0), 0u);

  auto j = nlohmann::json::parse(g.out);
  j[3]["computation"][1] = j[3]["computation"][1].get<double>() * 1.05;
  const auto bad =
      invoke({"verify", "--platform", "table1-hetero", "-n", "5", "--model", "1", "--gantt", "-"}, j.dump());
  EXPECT_EQ(bad.code, kVerificationFailed);
  EXPECT_NE(bad.out.find("equal-finish"), std::string::npos);

  const auto garbage =
      invoke({"verify", "--platform", "table1-hetero", "-n", "5", "--model", "1", "--gantt", "-"}, "{not json");
  EXPECT_EQ(garbage.code, kVerificationFailed);
}

TEST(CliSweep, Csv) {
  auto r = invoke({"sweep", "--platform", "table1-homo"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,model1,model2,model3,amdahl_ref");
  r = invoke({"sweep", "--platform", "table1-homo", "--var", "f"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "f,model1,model2,model3,amdahl_ref");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 22);
  EXPECT_EQ(invoke({"sweep", "--platform", "custom.json"}).code, kConfigError);
}

TEST(CliReproduce, WritesOutputsAndReportsAnchors) {
  const fs::path dir = scratch("reproduce");
  const auto r = invoke({"reproduce", "--out", dir.string()});
  // The dominance anchor fails at n = 1, 2; everything else passes.
  EXPECT_EQ(r.code, kAnchorFailed);
  for (const char* f : {"fig3.csv", "fig4.csv", "fig5.csv", "fig6.csv", "anchors.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto anchors = nlohmann::json::parse(slurp(dir / "anchors.json"));
  for (const auto& a : anchors) {
    EXPECT_EQ(a["pass"].get<bool>(), a["id"] != "e") << a["id"];
  }
  EXPECT_NE(slurp(dir / "fig4.csv").find("\n30,"), std::string::npos);
}

TEST(CliReproduce, FaultFlipsAnchor) {
  const fs::path dir = scratch("reproduce_fault");
  const auto r = invoke({"reproduce", "--out", dir.string(), "--fault", "invert-model2-k"});
  EXPECT_EQ(r.code, kAnchorFailed);
  const auto anchors = nlohmann::json::parse(slurp(dir / "anchors.json"));
  EXPECT_FALSE(anchors[0]["pass"].get<bool>());
  EXPECT_EQ(anchors[0]["id"], "a");
}

TEST(CliReproduce, UnwritableDirectory) {
  const fs::path dir = scratch("reproduce_io");
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(invoke({"reproduce", "--out", (dir / "file" / "sub").string()}).code, kIoError);
}

}  // namespace
}  // namespace dlt::cli
