// Copyright 2026 The owcfog Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "owcfog_cli_test";

// Exit status of the CLI run with `args`; stdout and stderr land in files.
int Run(const std::string& args) {
  fs::create_directories(kWork);
  const std::string cmd = std::string(OWCFOG_CLI) + " " + args + " >" +
                          (kWork / "stdout").string() + " 2>" + (kWork / "stderr").string();
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Out(const std::string& name) { return (kWork / name).string(); }

}  // namespace

TEST_CASE("validate on the shipped defaults") {
  CHECK(Run("validate --out " + Out("v")) == 0);
  const auto report = nlohmann::json::parse(Slurp(kWork / "v" / "validate.json"));
  CHECK(report["orderings_ok"] == true);
}

TEST_CASE("place a single light task") {
  CHECK(Run("place --override drr=0.002 --override workload=1000 --override tasks=1 --out " +
            Out("p")) == 0);
  CHECK(Slurp(kWork / "p" / "placement_tasks.csv").find(",CCloud,") != std::string::npos);
}

TEST_CASE("allocate a one-user scenario") {
  CHECK(Run("allocate --override scenario.mode=fixed --override 'scenario.users=[[3.1,1.2]]' "
            "--override room.max_reflection_order=1 --out " + Out("a")) == 0);
  const std::string csv = Slurp(kWork / "a" / "allocation.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("infeasible model exits with 2 and a report") {
  CHECK(Run("place --override tasks=500 --override workload=1500 --out " + Out("x")) == 2);
  const auto diag = nlohmann::json::parse(Slurp(kWork / "stderr"));
  CHECK(diag["status"] == "infeasible");
  CHECK(diag["constraint"] == "node_capacity");
  CHECK(fs::exists(kWork / "x" / "infeasible.json"));
}

TEST_CASE("usage and configuration errors exit with 1") {
  CHECK(Run("") == 1);
  CHECK(Run("juggle") == 1);
  CHECK(Run("place --fig 12 --out " + Out("e")) == 1);
  CHECK(Run("place --override nonsense=1 --out " + Out("e")) == 1);
  const auto diag = nlohmann::json::parse(Slurp(kWork / "stderr"));
  CHECK(diag["status"] == "config");
  CHECK(Run("place --config /nonexistent.json --out " + Out("e")) == 1);
  CHECK(Run("place --time-limit -3 --out " + Out("e")) == 1);
  CHECK(Run("--help") == 0);
}

TEST_CASE("config file, seed and time limit") {
  fs::create_directories(kWork);
  std::ofstream(kWork / "cfg.json") << R"({"placement": {"drr": 0.04, "workload": 1000, "tasks": 1}})";
  CHECK(Run("place --config " + Out("cfg.json") + " --seed 5 --time-limit 10 --out " +
            Out("c")) == 0);
  const auto manifest = nlohmann::json::parse(Slurp(kWork / "c" / "manifest"));
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["summary"]["total_power_w"] == doctest::Approx(3.06));
  std::ofstream(kWork / "bad.json") << R"({"placement": {"speed": 3}})";
  CHECK(Run("place --config " + Out("bad.json") + " --out " + Out("c2")) == 1);
}

TEST_CASE("sweep with a figure subset") {
  CHECK(Run("sweep --fig 8 --out " + Out("s")) == 0);
  const std::string fig = Slurp(kWork / "s" / "sweep_fig8.csv");
  CHECK(fig.rfind("drr,workload_mips,flow_mbps,CCloud_workload_mips", 0) == 0);
  CHECK(std::count(fig.begin(), fig.end(), '\n') == 106);
}
