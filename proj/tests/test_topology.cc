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

#include "owcfog/topology.hpp"

using namespace owcfog;
using namespace owcfog::topology;

TEST_CASE("reference topology") {
  const TopologyConfig t = BuildReferenceTopology(IdealMobiles());
  t.Validate();
  REQUIRE(t.nodes.size() == 13);
  CHECK(t.nodes[0].id == "CCloud");
  CHECK(t.nodes[4].id == "RoomFog");
  CHECK(t.nodes[5].id == "Mobile0");
  CHECK(t.MobileIndices().size() == 8);
  CHECK(t.NodeIndex("nope") == -1);
  const Route& room = t.routes[t.NodeIndex("RoomFog")];
  CHECK(room.hops.front() == "OLT");
  CHECK(room.hops.back() == "RoomFog");
  CHECK(RouteCapacity(t, room) == 10000.0);
  CHECK(t.routes[t.NodeIndex("Mobile1")].efficiency_w_per_mbps == 0.00195);
  CHECK(t.routes[t.NodeIndex("CCloud")].efficiency_w_per_mbps == 0.128);
  CHECK(CheckOrderings(t).empty());
}

TEST_CASE("mobile routes carry the allocated rate") {
  std::vector<MobileLink> mobiles = {{Wavelength::kBlue, 3.1e9, 2},
                                     {Wavelength::kRed, 4.5e9, 2}};
  const TopologyConfig t = BuildReferenceTopology(mobiles);
  const Route& r0 = t.routes[t.NodeIndex("Mobile0")];
  CHECK(RouteCapacity(t, r0) == doctest::Approx(3100.0));
  CHECK(r0.efficiency_w_per_mbps == 0.00177);
  // Both mobiles share the access point's ONU link.
  const Route& r1 = t.routes[t.NodeIndex("Mobile1")];
  CHECK(r0.links[0] == r1.links[0]);
  CHECK(t.nodes[t.NodeIndex("Mobile0")].access_point == 2);
  mobiles[0].wavelength.reset();
  CHECK_THROWS_AS(BuildReferenceTopology(mobiles), Error);
  mobiles[0] = {Wavelength::kRed, -1.0, 0};
  CHECK_THROWS_AS(BuildReferenceTopology(mobiles), Error);
}

TEST_CASE("device chain efficiency") {
  const auto devices = ReferenceDevices();
  CHECK(devices.size() == 10);
  CHECK_THROWS_AS(DeriveRouteEfficiency({}), Error);
  NetworkDevice bad{"X", "x", 10.0, 0.0};
  try {
    DeriveRouteEfficiency({bad});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
  }
  NetworkDevice a{"A", "a", 100.0, 10.0}, b{"B", "b", 50.0, 100.0};
  // W/Gbit/s to W/Mbit/s.
  CHECK(DeriveRouteEfficiency({a, b}) == doctest::Approx((10.0 + 0.5) / 1000.0));
}

TEST_CASE("ordering checks catch inconsistent tables") {
  TopologyParams p;
  p.room_fog.efficiency_w_per_mips = 0.0001;
  const auto failures = CheckOrderings(BuildReferenceTopology(IdealMobiles(), p));
  CHECK(!failures.empty());
}

TEST_CASE("json round trip") {
  const TopologyConfig t = BuildReferenceTopology(IdealMobiles());
  const auto doc = ToJson(t);
  const TopologyConfig back = FromJson(doc);
  CHECK(ToJson(back) == doc);
  REQUIRE(back.nodes.size() == t.nodes.size());
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    CHECK(back.nodes[i].id == t.nodes[i].id);
    CHECK(back.nodes[i].capacity_mips == t.nodes[i].capacity_mips);
    CHECK(back.routes[i].links == t.routes[i].links);
  }
  auto broken = doc;
  broken["processing_nodes"][0]["kind"] = "Spaceship";
  CHECK_THROWS_AS(FromJson(broken), Error);
}

TEST_CASE("structural validation") {
  TopologyConfig t = BuildReferenceTopology(IdealMobiles());
  t.routes.pop_back();
  CHECK_THROWS_AS(t.Validate(), Error);
  TopologyConfig d = BuildReferenceTopology(IdealMobiles());
  d.nodes[1].id = d.nodes[0].id;
  CHECK_THROWS_AS(d.Validate(), Error);
  CHECK(ParseNodeKind(NodeKindName(NodeKind::kMetroFog)) == NodeKind::kMetroFog);
}
