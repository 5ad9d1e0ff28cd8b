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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "json.hpp"
#include "owcfog/owcfog.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> Bundle(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = Slurp(e.path());
  }
  return out;
}

std::string Sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

size_t Lines(const std::string& s) {
  size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct Session {
  owc_session* s = nullptr;
  Session() { REQUIRE(owc_session_create(&s) == OWC_OK); }
  ~Session() { owc_session_destroy(s); }
  owc_status Override(const char* kv) { return owc_session_override(s, kv); }
};

fs::path Scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("owcfog_capi_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("status names and helpers") {
  CHECK(std::string(owc_status_name(OWC_OK)) == "ok");
  CHECK(std::string(owc_status_name(OWC_INFEASIBLE)) == "infeasible");
  CHECK(std::string(owc_version()).size() > 0);
  double m = 0.0;
  CHECK(owc_lambertian_order(60.0, &m) == OWC_OK);
  CHECK(m == doctest::Approx(1.0));
  CHECK(owc_lambertian_order(95.0, &m) == OWC_DOMAIN);
  CHECK(owc_lambertian_order(60.0, nullptr) == OWC_INVALID_ARGUMENT);
  double db = 0.0;
  CHECK(owc_sinr_db(10.0, &db) == OWC_OK);
  CHECK(db == doctest::Approx(10.0));
  CHECK(owc_sinr_db(0.0, &db) == OWC_DOMAIN);
}

TEST_CASE("session configuration") {
  Session s;
  CHECK(s.Override("placement.drr=0.02") == OWC_OK);
  CHECK(s.Override("placement.nothing=1") == OWC_CONFIG);
  const json err = json::parse(owc_session_last_error(s.s));
  CHECK(err["status"] == "config");
  CHECK(err["message"].get<std::string>().find("nothing") != std::string::npos);
  CHECK(owc_session_set_seed(s.s, 77) == OWC_OK);
  CHECK(owc_session_set_time_limit(s.s, -1.0) == OWC_INVALID_ARGUMENT);
  CHECK(owc_session_set_time_limit(s.s, 5.0) == OWC_OK);
  const json cfg = json::parse(owc_session_config(s.s));
  CHECK(cfg["scenario"]["seed"] == 77);
  CHECK(cfg["placement"]["time_limit_s"] == 5.0);
  CHECK(std::string(owc_session_config_hash(s.s)).size() == 64);
  owc_session* bad = nullptr;
  CHECK(owc_session_create_from_file("/nonexistent/cfg.json", &bad) == OWC_CONFIG);
  REQUIRE(bad != nullptr);
  owc_session_destroy(bad);
  CHECK(owc_run(nullptr, "place", "x", nullptr) == OWC_INVALID_ARGUMENT);
}

TEST_CASE("place bundle") {
  Session s;
  s.Override("drr=0.002");
  s.Override("workload=1000");
  s.Override("tasks=1");
  const fs::path out = Scratch("place");
  REQUIRE(owc_run(s.s, "place", out.c_str(), "7c") == OWC_OK);
  const auto files = Bundle(out);
  for (const char* f : {"placement.csv", "placement_tasks.csv", "utilization.csv",
                        "topology.json", "placement_fig7c.csv", "manifest"}) {
    CHECK(files.count(f) == 1);
  }
  CHECK(files.at("placement_tasks.csv").find("CCloud") != std::string::npos);
  CHECK(files.at("placement_fig7c.csv").rfind("drr,workload_mips,total_power_w,status\n", 0) == 0);
  const json manifest = json::parse(files.at("manifest"));
  CHECK(manifest["stage"] == "place");
  CHECK(manifest["config_sha256"] == owc_session_config_hash(s.s));
  CHECK(manifest["rng"].get<std::string>().size() > 0);
  CHECK(manifest["summary"]["total_power_w"] == doctest::Approx(1.052));
  // Every listed file hash matches the bytes on disk.
  for (const auto& [name, hash] : manifest["files"].items()) {
    REQUIRE(files.count(name) == 1);
    CHECK(Sha256(files.at(name)) == hash.get<std::string>());
  }
  CHECK(manifest["files"].size() == files.size() - 1);
  CHECK(owc_run(s.s, "place", out.c_str(), "12") == OWC_INVALID_ARGUMENT);
  CHECK(owc_run(s.s, "dance", out.c_str(), nullptr) == OWC_INVALID_ARGUMENT);
}

TEST_CASE("identical runs write identical bytes") {
  for (const char* stage : {"allocate", "chain", "sweep"}) {
    CAPTURE(stage);
    Session s;
    s.Override("room.max_reflection_order=1");
    const fs::path a = Scratch(std::string(stage) + "_a");
    const fs::path b = Scratch(std::string(stage) + "_b");
    REQUIRE(owc_run(s.s, stage, a.c_str(), nullptr) == OWC_OK);
    REQUIRE(owc_run(s.s, stage, b.c_str(), nullptr) == OWC_OK);
    CHECK(Bundle(a) == Bundle(b));
  }
}

TEST_CASE("chain caps mobile routes at the allocated rates") {
  Session s;
  s.Override("room.max_reflection_order=1");
  s.Override("scenario.mode=s1");
  const fs::path out = Scratch("chain");
  REQUIRE(owc_run(s.s, "chain", out.c_str(), "11") == OWC_OK);
  const auto files = Bundle(out);
  const json topo = json::parse(files.at("topology.json"));
  std::istringstream alloc(files.at("allocation.csv"));
  std::string line;
  std::getline(alloc, line);
  std::vector<double> rates;
  while (std::getline(alloc, line)) {
    rates.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  REQUIRE(rates.size() == 8);
  int checked = 0;
  for (const auto& l : topo["links"]) {
    const std::string to = l["to"];
    if (to.rfind("Mobile", 0) != 0) continue;
    const int k = std::stoi(to.substr(6));
    CHECK(l["capacity_mbps"].get<double>() <= rates[k] / 1e6 * (1 + 1e-12));
    CHECK(l["capacity_mbps"].get<double>() == doctest::Approx(rates[k] / 1e6));
    ++checked;
  }
  CHECK(checked == 8);
  CHECK(files.count("placement_fig11.csv") == 1);
}

TEST_CASE("empty scenario gives an empty bundle") {
  Session s;
  s.Override("scenario.mode=fixed");
  s.Override("scenario.users=[]");
  const fs::path out = Scratch("empty");
  REQUIRE(owc_run(s.s, "chain", out.c_str(), nullptr) == OWC_OK);
  const auto files = Bundle(out);
  CHECK(Lines(files.at("allocation.csv")) == 1);
  CHECK(Lines(files.at("scenario.csv")) == 1);
  CHECK(Lines(files.at("placement.csv")) == 1);
}

TEST_CASE("one-user allocation") {
  Session s;
  s.Override("room.max_reflection_order=1");
  s.Override("scenario.mode=fixed");
  s.Override("scenario.users=[[2.2,1.4]]");
  const fs::path out = Scratch("one");
  REQUIRE(owc_run(s.s, "allocate", out.c_str(), nullptr) == OWC_OK);
  CHECK(Lines(Bundle(out).at("allocation.csv")) == 2);
}

TEST_CASE("infeasible runs leave a report") {
  Session s;
  s.Override("tasks=500");
  s.Override("workload=1500");
  const fs::path out = Scratch("infeasible");
  CHECK(owc_run(s.s, "place", out.c_str(), nullptr) == OWC_INFEASIBLE);
  const json report = json::parse(Slurp(out / "infeasible.json"));
  CHECK(report["constraint"] == "node_capacity");
  CHECK(json::parse(owc_session_last_error(s.s))["constraint"] == "node_capacity");
}

TEST_CASE("validate") {
  Session s;
  const fs::path out = Scratch("validate");
  REQUIRE(owc_run(s.s, "validate", out.c_str(), nullptr) == OWC_OK);
  CHECK(json::parse(owc_session_last_summary(s.s))["orderings_ok"] == true);
  s.Override("topology.room_fog.efficiency_w_per_mips=0.0001");
  CHECK(owc_run(s.s, "validate", out.c_str(), nullptr) == OWC_CONFIG);
}
