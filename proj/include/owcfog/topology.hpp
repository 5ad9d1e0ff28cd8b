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
// Cloud and fog processing hierarchy reached from the OLT.
//
// Every processing node has exactly one route from the OLT. Routes are chains
// of graph vertices; links between vertices carry a capacity and may be shared
// by several routes (the OLT to edge-router link by MetroFog and CCloud, an
// access point's ONU link by all mobiles served from that access point).
// Route efficiencies default to the published per-route figures; the device
// chain only drives capacities and the efficiency diagnostic.

#ifndef OWCFOG_TOPOLOGY_HPP_
#define OWCFOG_TOPOLOGY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "owcfog/common.hpp"

namespace owcfog::topology {

enum class NodeKind { kMobile, kRoomFog, kBuildFog, kCampFog, kMetroFog, kCCloud };

std::string_view NodeKindName(NodeKind kind);
std::optional<NodeKind> ParseNodeKind(std::string_view name);

struct ProcessingNode {
  std::string id;
  NodeKind kind = NodeKind::kRoomFog;
  double capacity_mips = 0.0;
  double efficiency_w_per_mips = 0.0;
  // Mobiles only.
  std::optional<Wavelength> wavelength;
  int access_point = -1;
};

struct NetworkDevice {
  std::string name;
  std::string model;
  double power_w = 0.0;
  double capacity_gbps = 0.0;

  double EfficiencyWPerGbps() const { return power_w / capacity_gbps; }
};

struct LinkSpec {
  std::string from;
  std::string to;
  double capacity_mbps = 0.0;
};

struct Route {
  std::string destination;
  // Vertex chain starting at the OLT and ending at the destination.
  std::vector<std::string> hops;
  // Indices into TopologyConfig::links, one per hop transition.
  std::vector<int> links;
  double capacity_mbps = 0.0;
  double efficiency_w_per_mbps = 0.0;
};

struct TopologyConfig {
  std::vector<ProcessingNode> nodes;
  // OWC downlink route efficiency of a mobile by its wavelength, W/Mbit/s.
  PerWavelength<double> mobile_route_efficiency{};
  // routes[i] leads to nodes[i].
  std::vector<Route> routes;
  std::vector<LinkSpec> links;
  std::vector<NetworkDevice> devices;

  int NodeIndex(const std::string& id) const;
  std::vector<int> MobileIndices() const;
  // Throws kConfig on structural problems (missing route, bad capacity...).
  void Validate() const;
};

// One per mobile unit: the OWC downlink carrying its traffic.
struct MobileLink {
  std::optional<Wavelength> wavelength;
  double rate_bps = 0.0;
  int access_point = 0;
};

// The eight mobiles of the ideal scenario: one per access point, RYGBRYGB,
// 10 Gbit/s each.
std::vector<MobileLink> IdealMobiles();

std::vector<NetworkDevice> ReferenceDevices();

struct NodeParams {
  double capacity_mips = 0.0;
  double efficiency_w_per_mips = 0.0;
  double route_efficiency_w_per_mbps = 0.0;
};

struct TopologyParams {
  NodeParams ccloud{144000.0, 0.000796, 0.128};
  NodeParams metro_fog{73440.0, 0.00129, 0.0713};
  NodeParams camp_fog{35160.0, 0.0027, 0.0475};
  NodeParams build_fog{34200.0, 0.0028, 0.0238};
  NodeParams room_fog{6200.0, 0.003, 0.0015};
  double mobile_capacity_mips = 1500.0;
  double mobile_efficiency_w_per_mips = 0.004;
  PerWavelength<double> mobile_route_efficiency{0.00222, 0.00195, 0.00177,
                                                0.00177};
  // Building and campus LAN links into their fog servers.
  double lan_capacity_mbps = 10000.0;
  double onu_capacity_mbps = 10000.0;
  std::vector<NetworkDevice> devices = ReferenceDevices();

  NodeParams& For(NodeKind kind);
  const NodeParams& For(NodeKind kind) const;
};

// Throws kConfig when a mobile lacks its wavelength or has a negative rate.
TopologyConfig BuildReferenceTopology(const std::vector<MobileLink>& mobiles,
                                      const TopologyParams& params = {});

// Minimum link capacity along the route, Mbit/s.
double RouteCapacity(const TopologyConfig& topology, const Route& route);

// Sum of device power / capacity, W per Mbit/s. Throws kInvalidArgument on an
// empty chain and kConfig on a non-positive capacity.
double DeriveRouteEfficiency(const std::vector<NetworkDevice>& chain);

// Efficiency and route orderings of the node and route tables; one message
// per failed check, empty when consistent.
std::vector<std::string> CheckOrderings(const TopologyConfig& topology);

nlohmann::json ToJson(const TopologyConfig& topology);
TopologyConfig FromJson(const nlohmann::json& doc);

}  // namespace owcfog::topology

#endif  // OWCFOG_TOPOLOGY_HPP_
