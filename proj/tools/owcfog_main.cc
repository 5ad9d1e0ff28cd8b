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

// owcfog command-line frontend. Exit status: 0 success, 2 infeasible model,
// 1 usage, configuration or runtime error. Diagnostics go to stderr as one
// JSON object per line; stage summaries go to stdout.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "owcfog/owcfog.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct Command {
  std::string stage;
  std::string config;
  std::string out = "out";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::string fig;
};

void Diagnose(const std::string& stage, const std::string& status,
              const std::string& message, const json& extra = json::object()) {
  json d = {{"level", "error"}, {"stage", stage}, {"status", status}, {"message", message}};
  d.update(extra);
  std::cerr << d.dump() << "\n";
}

int Report(owc_session* s, owc_status status, const std::string& stage) {
  json err = json::parse(owc_session_last_error(s), nullptr, false);
  if (!err.is_object()) err = json::object();
  const std::string message = err.value("message", std::string(owc_status_name(status)));
  err.erase("message");
  err.erase("status");
  Diagnose(stage, owc_status_name(status), message, err);
  return status == OWC_INFEASIBLE ? kExitInfeasible : kExitError;
}

int Execute(const Command& cmd) {
  owc_session* s = nullptr;
  owc_status st = cmd.config.empty() ? owc_session_create(&s)
                                     : owc_session_create_from_file(cmd.config.c_str(), &s);
  if (!s) {
    Diagnose(cmd.stage, owc_status_name(st), "cannot create session");
    return kExitError;
  }
  int code = kExitOk;
  auto fail = [&](owc_status status) {
    code = Report(s, status, cmd.stage);
    // Configuration problems are usage errors whatever the code path.
    if (status != OWC_INFEASIBLE) code = kExitError;
  };
  if (st != OWC_OK) fail(st);
  for (size_t i = 0; code == kExitOk && i < cmd.overrides.size(); ++i) {
    st = owc_session_override(s, cmd.overrides[i].c_str());
    if (st != OWC_OK) fail(st);
  }
  if (code == kExitOk && cmd.seed) {
    st = owc_session_set_seed(s, *cmd.seed);
    if (st != OWC_OK) fail(st);
  }
  if (code == kExitOk && cmd.time_limit) {
    st = owc_session_set_time_limit(s, *cmd.time_limit);
    if (st != OWC_OK) fail(st);
  }
  if (code == kExitOk) {
    st = owc_run(s, cmd.stage.c_str(), cmd.out.c_str(),
                 cmd.fig.empty() ? nullptr : cmd.fig.c_str());
    if (st == OWC_OK) {
      std::cout << owc_session_last_summary(s) << "\n";
    } else {
      fail(st);
    }
  }
  owc_session_destroy(s);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical wireless access and fog placement toolkit"};
  app.set_version_flag("--version", std::string(owc_version()));
  app.require_subcommand(1);

  Command cmd;
  const std::vector<std::pair<std::string, std::string>> stages = {
      {"channel", "Characterize the channel over the user grid"},
      {"allocate", "Assign access points and wavelengths to a scenario"},
      {"place", "Place processing tasks on the ideal topology"},
      {"sweep", "Placement over a DRR x workload grid"},
      {"chain", "Allocate, then place tasks using the allocated rates"},
      {"validate", "Check the topology and power tables"},
  };
  for (const auto& [name, help] : stages) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", cmd.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", cmd.out, "Output directory")->capture_default_str();
    sub->add_option("--override", cmd.overrides, "key=value (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--seed", cmd.seed, "Scenario RNG seed");
    sub->add_option("--time-limit", cmd.time_limit, "Solver time limit in seconds")
        ->check(CLI::PositiveNumber);
    if (name == "place" || name == "sweep" || name == "chain") {
      sub->add_option("--fig", cmd.fig, "Column subset")
          ->check(CLI::IsMember({"7a", "7b", "7c", "8", "9", "10", "11"}));
    }
    sub->callback([&cmd, n = name] { cmd.stage = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    Diagnose(cmd.stage.empty() ? "cli" : cmd.stage, "usage", e.what());
    return kExitError;
  }
  return Execute(cmd);
}
