// Copyright 2026 The rulegauge Authors
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

#include "rulegauge/report.hpp"

#include "../support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using rulegauge::test::TempDir;

namespace
{
int run_cli(const std::string & args)
{
  const std::string cmd = std::string(RULEGAUGE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const std::filesystem::path & p) { return "'" + p.string() + "'"; }

std::string slurp(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}
}  // namespace

TEST(Cli, EmptyInputDirectoryExitsTwo)
{
  TempDir dir("cli-empty");
  EXPECT_EQ(run_cli("analyze --input " + quoted(dir.path()) + " --out " + quoted(dir.path() / "o")), 2);
}

TEST(Cli, UnknownOptionExitsTwo)
{
  EXPECT_EQ(run_cli("analyze --bogus"), 2);
  EXPECT_EQ(run_cli("analyze --input . --rules headway"), 2);
}

TEST(Cli, HelpExitsZero)
{
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, SynthValidateAnalyze)
{
  TempDir dir("cli-flow");
  const auto corpus = dir.path() / "corpus";
  ASSERT_EQ(
    run_cli(
      "synth --seed 9 --scenarios 4 --vehicles 3 --duration-s 3 --plant-dist const:0.9 "
      "--plant-speed uniform:0.8,1.0 --out " + quoted(corpus)),
    0);
  EXPECT_TRUE(std::filesystem::exists(corpus / "planted.csv"));
  EXPECT_EQ(run_cli("validate --input " + quoted(corpus)), 0);

  for (const int workers : {1, 3}) {
    const auto out = dir.path() / ("out" + std::to_string(workers));
    ASSERT_EQ(
      run_cli("analyze --input " + quoted(corpus) + " --workers " + std::to_string(workers) + " --out " + quoted(out)),
      0);
    const auto report = nlohmann::json::parse(slurp(out / "report_dist.json"));
    EXPECT_NEAR(report["dataset_mean"].get<double>(), 0.9, 1e-9);
    EXPECT_EQ(report["scenario_count"], 4);
  }
  EXPECT_EQ(slurp(dir.path() / "out1" / "report_speed.json"), slurp(dir.path() / "out3" / "report_speed.json"));
}

TEST(Cli, ValidateReportsInvalidFile)
{
  TempDir dir("cli-validate");
  std::ofstream(dir.path() / "bad.rgsf.json") << R"({"schema_version": 1})";
  EXPECT_EQ(run_cli("validate --input " + quoted(dir.path())), 1);
  EXPECT_EQ(run_cli("validate --input " + quoted(dir.path() / "missing")), 2);
}

TEST(Cli, StrictModeExitsThree)
{
  TempDir dir("cli-strict");
  ASSERT_EQ(run_cli("synth --scenarios 2 --vehicles 2 --duration-s 2 --out " + quoted(dir.path())), 0);
  std::ofstream(dir.path() / "zz.rgsf.json") << "{";
  EXPECT_EQ(run_cli("analyze --strict --input " + quoted(dir.path()) + " --out " + quoted(dir.path() / "o")), 3);
  EXPECT_EQ(run_cli("analyze --input " + quoted(dir.path()) + " --out " + quoted(dir.path() / "o")), 0);
}
