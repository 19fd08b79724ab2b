// Copyright 2026 The rtsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "gtest/gtest.h"
#include "rtsg/serialize.hpp"

namespace rtsg {
namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(RTSG_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Json cli_json(const std::string& args) {
  const auto r = cli("--json " + args);
  EXPECT_EQ(r.status, 0) << r.out;
  return Json::parse(r.out);
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rtsg_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(CliTest, SolveHex) {
  const auto j = cli_json("solve --game hex --L 3");
  EXPECT_EQ(j["value"]["exact"], "0");
  EXPECT_EQ(j["optimal_first_moves"], Json::parse("[[1,1]]"));
  EXPECT_TRUE(j["shared"].get<bool>());
  EXPECT_EQ(j["mean_check"], "PASS");
  EXPECT_EQ(j["verb"], "solve");
}

TEST(CliTest, SolveRecursiveMajority) {
  const auto j = cli_json("solve --game recursive-majority --h 1");
  EXPECT_EQ(j["expected_length"]["exact"], "5/2");
  EXPECT_EQ(j["optimal_first_moves"].size(), 3u);
}

TEST(CliTest, SolveAndOrAtFixedPoint) {
  const auto j = cli_json("solve --game andor --h 2 --p 0.381966");
  EXPECT_NEAR(j["expected_length"]["approx"].get<double>(), std::numbers::phi * std::numbers::phi, 1e-6);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(cli("solve --game hex --L 4").status, 2);
  EXPECT_EQ(cli("solve --game hex --L 0").status, 3);
  EXPECT_EQ(cli("solve --game chess").status, 3);
  EXPECT_EQ(cli("solve --game hex --L 2 --p 1.5").status, 3);
  EXPECT_EQ(cli("solve --game hex --L 2 --p abc").status, 3);
  EXPECT_EQ(cli("").status, 3);
  EXPECT_EQ(cli("replay /nonexistent/records.jsonl").status, 3);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(CliTest, ErrorsNameTheirCode) {
  const auto r = cli("solve --game hex --L 4");
  EXPECT_NE(r.out.find("capacity"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("13"), std::string::npos) << r.out;
}

TEST(CliTest, RepeatsAreByteIdentical) {
  for (const std::string args : {"--seed 3 selfplay --game hex --L 4 --games 12 --samples 300",
                                 "--seed 3 heatmap --L 4 --samples 5000", "--seed 3 tree --kind switching --h 6 --games 300",
                                 "--seed 3 --json influence --game hex --L 4 --method mc --samples 3000"}) {
    const auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.status, 0) << args << "\n" << a.out;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(CliTest, ThreadCountDoesNotChangeResults) {
  const auto a = cli("--seed 4 --threads 1 selfplay --game bridgit --L 3 --games 16 --samples 200");
  const auto b = cli("--seed 4 --threads 3 selfplay --game bridgit --L 3 --games 16 --samples 200");
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, SelfplayRecordsReplay) {
  const auto dir = scratch("replay");
  const auto r = cli("--seed 9 --out " + dir.string() + " selfplay --game hex --L 4 --games 15 --samples 200");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto records = dir / "records.jsonl";
  ASSERT_TRUE(std::filesystem::exists(records));
  std::ifstream in(records);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto rec = record_from_json(Json::parse(line));
    EXPECT_EQ(rec.game, "hex");
    ++n;
  }
  EXPECT_EQ(n, 15);
  const auto rp = cli("replay " + records.string());
  EXPECT_EQ(rp.status, 0);
  EXPECT_NE(rp.out.find("15 records, 15 reproduce"), std::string::npos) << rp.out;

  // A tampered winner is reported.
  std::ifstream again(records);
  std::getline(again, line);
  auto j = Json::parse(line);
  j["winner"] = j["winner"] == "I" ? "II" : "I";
  const auto bad = dir / "bad.jsonl";
  std::ofstream(bad) << j.dump() << "\n";
  const auto rb = cli("replay " + bad.string());
  EXPECT_NE(rb.status, 0);
  std::filesystem::remove_all(dir);
}

TEST(CliTest, ScalingFitFromLengths) {
  const auto j = cli_json("scaling --sizes 2,4,8 --lengths 2.8284271,8,22.627417");
  EXPECT_NEAR(j["fit"]["slope"].get<double>(), 1.5, 1e-6);
}

TEST(CliTest, HeatmapFiles) {
  const auto dir = scratch("heatmap");
  const auto r = cli("--out " + dir.string() + " heatmap --L 3 --samples 20000");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("argmax (1,1)"), std::string::npos) << r.out;
  bool csv = false, svg = false;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    csv = csv || e.path().extension() == ".csv";
    svg = svg || e.path().extension() == ".svg";
  }
  EXPECT_TRUE(csv);
  EXPECT_TRUE(svg);
  std::filesystem::remove_all(dir);
}

TEST(CliTest, TreeSeries) {
  const auto j = cli_json("tree --kind switching --h 3 --games 0");
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_DOUBLE_EQ(j["rows"][1]["q"].get<double>(), 0.125);
  EXPECT_DOUBLE_EQ(j["rows"][2]["q"].get<double>(), 729.0 / 4096.0);
  for (const auto& row : j["rows"]) EXPECT_NEAR(row["win_prob"].get<double>(), row["oracle_win_prob"].get<double>(), 1e-12);
}

}  // namespace
}  // namespace rtsg
