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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "owcfog/placement.hpp"
#include "owcfog/topology.hpp"

using namespace owcfog;
using namespace owcfog::placement;
using topology::TopologyConfig;

namespace {

TopologyConfig Ideal() { return topology::BuildReferenceTopology(topology::IdealMobiles()); }

PlacementProblem Problem(const TopologyConfig& t, double w, double drr, int count,
                         bool no_self = true) {
  PlacementProblem p;
  p.topology = t;
  p.tasks = DemandsFromDrr(w, drr, count, t.MobileIndices());
  p.no_self_processing = no_self;
  return p;
}

std::string NodeOf(const PlacementProblem& p, const PlacementSolution& s, int k) {
  return p.topology.nodes[s.node_of_task[k]].id;
}

double Cost(const PlacementProblem& p, const std::string& node) {
  return PlacementCost(p, p.tasks[0], p.topology.NodeIndex(node));
}

}  // namespace

TEST_CASE("single task regimes") {
  const TopologyConfig t = Ideal();
  struct Case {
    double drr;
    const char* node;
    double total;
  };
  for (const Case& c : {Case{0.002, "CCloud", 1.052}, Case{0.02, "MetroFog", 2.716},
                        Case{0.04, "RoomFog", 3.06}, Case{0.06, "RoomFog", 3.09}}) {
    CAPTURE(c.drr);
    const PlacementProblem p = Problem(t, 1000.0, c.drr, 1);
    const PlacementSolution s = Solve(p);
    CHECK(NodeOf(p, s, 0) == c.node);
    CHECK(std::abs(s.objective - c.total) < 1e-9);
  }
  const PlacementProblem p04 = Problem(t, 1000.0, 0.04, 1);
  CHECK(Cost(p04, "RoomFog") < Cost(p04, "BuildFog"));
  CHECK(Cost(p04, "BuildFog") < Cost(p04, "MetroFog"));
  const PlacementProblem p06 = Problem(t, 1000.0, 0.06, 1);
  CHECK(std::abs(Cost(p06, "Mobile0") - 4.1332) < 1e-9);
  CHECK(std::abs(Cost(p06, "MetroFog") - 5.568) < 1e-9);
}

TEST_CASE("demands from the data-rate ratio") {
  std::vector<std::string> warnings;
  const auto d = DemandsFromDrr(400.0, 0.6, 10, {5, 6, 7}, &warnings);
  REQUIRE(d.size() == 10);
  CHECK(d[0].flow_mbps == doctest::Approx(240.0));
  CHECK(d[0].source == 5);
  CHECK(d[3].source == 5);
  CHECK(d[4].source == 6);
  CHECK(warnings.empty());
  DemandsFromDrr(2000.0, 0.6, 1, {5}, &warnings);
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(DemandsFromDrr(400.0, 0.0, 1, {5}), Error);
  CHECK_THROWS_AS(DemandsFromDrr(400.0, 1.5, 1, {5}), Error);
  CHECK_THROWS_AS(DemandsFromDrr(400.0, 0.6, 0, {5}), Error);
  CHECK_THROWS_AS(DemandsFromDrr(400.0, 0.6, 1, {}), Error);
}

TEST_CASE("mobile utilization packs whole tasks") {
  const TopologyConfig t = Ideal();
  struct Case {
    double w;
    double utilization;
  };
  for (const Case& c : {Case{400, 0.8}, Case{700, 1400.0 / 1500.0}, Case{800, 800.0 / 1500.0}}) {
    CAPTURE(c.w);
    const PlacementProblem p = Problem(t, c.w, 0.6, 50);
    const PlacementSolution s = Solve(p);
    for (const auto& u : MakeUtilizationReport(p, s)) {
      CHECK(u.utilization == doctest::Approx(c.utilization).epsilon(1e-12));
    }
  }
}

TEST_CASE("solutions are internally consistent") {
  const TopologyConfig t = Ideal();
  for (double drr : {0.002, 0.06, 0.6}) {
    for (double w : {100.0, 700.0, 1500.0}) {
      const PlacementProblem p = Problem(t, w, drr, 50);
      const PlacementSolution s = Solve(p);
      double sum = 0.0;
      for (size_t k = 0; k < p.tasks.size(); ++k) {
        sum += PlacementCost(p, p.tasks[k], s.node_of_task[k]);
        CHECK(s.node_of_task[k] != p.tasks[k].source);
      }
      CHECK(s.objective == doctest::Approx(sum).epsilon(1e-12));
      CHECK(s.objective == doctest::Approx(s.processing_total_w + s.networking_total_w).epsilon(1e-12));
      CHECK(AuditFlowConservation(p, s).empty());
      CHECK(AuditCapacitySaturation(p, s).empty());
      const PlacementModel m(p);
      const auto x = m.PointFor(s.node_of_task);
      CHECK(m.rows().Violations(x, 1e-9).empty());
      CHECK(linear::Evaluate(m.objective(), x) == doctest::Approx(s.objective).epsilon(1e-12));
      const PowerReport r = MakePowerReport(p, s);
      CHECK(r.total_w == doctest::Approx(s.objective).epsilon(1e-12));
    }
  }
}

TEST_CASE("model rows reject broken placements") {
  const TopologyConfig t = Ideal();
  const PlacementProblem p = Problem(t, 1000.0, 0.6, 8);
  const PlacementModel m(p);
  std::vector<int> self(8);
  for (int k = 0; k < 8; ++k) self[k] = p.tasks[k].source;
  bool no_self = false;
  for (const auto& v : m.rows().Violations(m.PointFor(self), 1e-9)) {
    if (v.rfind("no_self", 0) == 0) no_self = true;
  }
  CHECK(no_self);
  // Eight 1000-MIPS tasks on RoomFog exceed its 6200 MIPS.
  std::vector<int> room(8, t.NodeIndex("RoomFog"));
  bool cap = false;
  for (const auto& v : m.rows().Violations(m.PointFor(room), 1e-9)) {
    if (v.rfind("node_capacity", 0) == 0) cap = true;
  }
  CHECK(cap);
}

TEST_CASE("branch and bound matches exhaustive enumeration on small instances") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    topology::TopologyParams params;
    // Tight capacities so that packing matters.
    params.room_fog.capacity_mips = 500 + 3000 * unit(rng);
    params.build_fog.capacity_mips = 500 + 3000 * unit(rng);
    params.camp_fog.capacity_mips = 500 + 3000 * unit(rng);
    params.metro_fog.capacity_mips = 500 + 3000 * unit(rng);
    params.ccloud.capacity_mips = 500 + 6000 * unit(rng);
    params.mobile_capacity_mips = 500 + 1500 * unit(rng);
    params.lan_capacity_mbps = 200 + 2000 * unit(rng);
    const topology::MobileLink mob{Wavelength::kRed, 1e9 + 9e9 * unit(rng), 0};
    const TopologyConfig t = topology::BuildReferenceTopology({mob}, params);
    REQUIRE(t.nodes.size() == 6);
    PlacementProblem p;
    p.topology = t;
    p.no_self_processing = (trial % 3) != 0;
    const int k = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) {
      const double w = 100 + 1400 * unit(rng);
      p.tasks.push_back({i, t.MobileIndices()[0], w, w * (0.002 + 0.6 * unit(rng))});
    }
    std::optional<PlacementSolution> bb, ex;
    std::string bb_err, ex_err;
    try {
      bb = Solve(p);
    } catch (const InfeasibleError& e) {
      bb_err = e.constraint();
    }
    try {
      ex = Solve(p, {Method::kExhaustive, 60.0, 1e7});
    } catch (const InfeasibleError& e) {
      ex_err = e.constraint();
    }
    REQUIRE(bb.has_value() == ex.has_value());
    if (!bb) continue;
    ++compared;
    CHECK(bb->objective == doctest::Approx(ex->objective).epsilon(1e-9));
    CHECK(AuditFlowConservation(p, *bb).empty());
    CHECK(AuditCapacitySaturation(p, *bb).empty());
    const PlacementModel m(p);
    CHECK(m.rows().Violations(m.PointFor(bb->node_of_task), 1e-9).empty());
  }
  CHECK(compared > 75);
}

TEST_CASE("total power never falls as the data-rate ratio grows") {
  const TopologyConfig t = Ideal();
  const std::vector<double> drrs = {0.002, 0.02, 0.04, 0.06, 0.2, 0.4, 0.6};
  for (double w : {100.0, 400.0, 800.0, 1200.0, 1500.0}) {
    double prev = 0.0;
    for (double drr : drrs) {
      const double total = Solve(Problem(t, w, drr, 50)).objective;
      CHECK(total >= prev - 1e-9);
      prev = total;
    }
  }
}

TEST_CASE("ties follow the node preference order") {
  const TopologyConfig t = Ideal();
  const auto ranks = PreferenceRanks(t);
  CHECK(ranks[t.NodeIndex("RoomFog")] == 0);
  // Green and blue mobiles have the lowest route efficiency.
  CHECK(ranks[t.NodeIndex("Mobile2")] == 1);
  CHECK(ranks[t.NodeIndex("Mobile3")] == 2);
  CHECK(ranks[t.NodeIndex("CCloud")] == static_cast<int>(t.nodes.size()) - 1);
  CHECK(ranks[t.NodeIndex("BuildFog")] < ranks[t.NodeIndex("CampFog")]);
  CHECK(ranks[t.NodeIndex("CampFog")] < ranks[t.NodeIndex("MetroFog")]);
  // Make RoomFog and BuildFog cost the same for one task.
  topology::TopologyParams params;
  params.build_fog = params.room_fog;
  const TopologyConfig tie = topology::BuildReferenceTopology(topology::IdealMobiles(), params);
  const PlacementProblem p = Problem(tie, 1000.0, 0.04, 1);
  CHECK(NodeOf(p, Solve(p), 0) == "RoomFog");
}

TEST_CASE("infeasible placements name the constraint") {
  const TopologyConfig t = Ideal();
  SUBCASE("total workload over capacity") {
    try {
      Solve(Problem(t, 1500.0, 0.6, 500));
      FAIL("expected infeasible");
    } catch (const InfeasibleError& e) {
      CHECK(e.constraint() == "node_capacity");
    }
  }
  SUBCASE("task too large for any node") {
    PlacementProblem p = Problem(t, 1000.0, 0.6, 1);
    p.tasks[0].workload_mips = 200000.0;
    p.tasks[0].flow_mbps = 1.0;
    try {
      Solve(p);
      FAIL("expected infeasible");
    } catch (const InfeasibleError& e) {
      CHECK(e.constraint() == "node_capacity");
      CHECK(std::string(e.what()).find("task 0") != std::string::npos);
    }
  }
  SUBCASE("flow too large for any route") {
    PlacementProblem p = Problem(t, 1000.0, 0.6, 1);
    p.tasks[0].flow_mbps = 300000.0;
    try {
      Solve(p);
      FAIL("expected infeasible");
    } catch (const InfeasibleError& e) {
      CHECK(e.constraint() == "link_capacity");
    }
  }
  SUBCASE("bad alpha") {
    PlacementProblem p = Problem(t, 1000.0, 0.6, 1);
    p.alpha = 10.0;
    CHECK_THROWS_AS(Solve(p), Error);
  }
}

TEST_CASE("sweep grid") {
  const TopologyConfig t = Ideal();
  SweepSpec spec{{0.002, 0.6}, {100, 400, 1500}, 50};
  const auto rows = Sweep(t, spec);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].drr == 0.002);
  CHECK(rows[2].workload_mips == 1500);
  CHECK(rows[3].drr == 0.6);
  for (const auto& r : rows) CHECK(r.feasible);
  const auto again = Sweep(t, spec);
  for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].power.total_w == again[i].power.total_w);
  SweepSpec one{{0.2}, {700}, 50};
  CHECK(Sweep(t, one).size() == 1);
}
