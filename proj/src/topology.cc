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

#include "owcfog/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace owcfog::topology {

using nlohmann::json;

namespace {

constexpr const char* kOlt = "OLT";

struct KindName {
  NodeKind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {
    {NodeKind::kMobile, "Mobile"},     {NodeKind::kRoomFog, "RoomFog"},
    {NodeKind::kBuildFog, "BuildFog"}, {NodeKind::kCampFog, "CampFog"},
    {NodeKind::kMetroFog, "MetroFog"}, {NodeKind::kCCloud, "CCloud"},
};

const NetworkDevice& Device(const std::vector<NetworkDevice>& devices,
                            const std::string& name) {
  for (const auto& d : devices) {
    if (d.name == name) return d;
  }
  throw Error(ErrorKind::kConfig, "network device '" + name + "' is not defined");
}

class Builder {
 public:
  explicit Builder(TopologyConfig& t) : t_(t) {}

  int Link(const std::string& from, const std::string& to, double mbps) {
    for (size_t i = 0; i < t_.links.size(); ++i) {
      if (t_.links[i].from == from && t_.links[i].to == to) return static_cast<int>(i);
    }
    t_.links.push_back({from, to, mbps});
    return static_cast<int>(t_.links.size()) - 1;
  }

  void AddRoute(const std::string& dest, std::vector<std::string> hops,
                double efficiency) {
    Route r;
    r.destination = dest;
    for (size_t i = 0; i + 1 < hops.size(); ++i) {
      r.links.push_back(FindLink(hops[i], hops[i + 1]));
    }
    r.hops = std::move(hops);
    r.efficiency_w_per_mbps = efficiency;
    r.capacity_mbps = RouteCapacity(t_, r);
    t_.routes.push_back(std::move(r));
  }

  int FindLink(const std::string& from, const std::string& to) const {
    for (size_t i = 0; i < t_.links.size(); ++i) {
      if (t_.links[i].from == from && t_.links[i].to == to) return static_cast<int>(i);
    }
    throw Error(ErrorKind::kConfig, "no link " + from + " -> " + to);
  }

 private:
  TopologyConfig& t_;
};

}  // namespace

std::string_view NodeKindName(NodeKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "?";
}

std::optional<NodeKind> ParseNodeKind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (name == kn.name) return kn.kind;
  }
  return std::nullopt;
}

int TopologyConfig::NodeIndex(const std::string& id) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> TopologyConfig::MobileIndices() const {
  std::vector<int> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::kMobile) out.push_back(static_cast<int>(i));
  }
  return out;
}

void TopologyConfig::Validate() const {
  if (routes.size() != nodes.size()) {
    throw Error(ErrorKind::kConfig, "every processing node needs exactly one route");
  }
  std::set<std::string> ids;
  std::map<NodeKind, int> per_kind;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const ProcessingNode& n = nodes[i];
    if (!ids.insert(n.id).second) {
      throw Error(ErrorKind::kConfig, "duplicate processing node '" + n.id + "'");
    }
    ++per_kind[n.kind];
    if (!(n.capacity_mips > 0.0) || !(n.efficiency_w_per_mips > 0.0)) {
      throw Error(ErrorKind::kConfig,
                  "node '" + n.id + "' needs positive capacity and efficiency");
    }
    if (n.kind == NodeKind::kMobile && !n.wavelength) {
      throw Error(ErrorKind::kConfig, "mobile '" + n.id + "' has no wavelength");
    }
    const Route& r = routes[i];
    if (r.destination != n.id || r.hops.empty() || r.hops.front() != kOlt ||
        r.hops.back() != n.id || r.links.size() + 1 != r.hops.size()) {
      throw Error(ErrorKind::kConfig, "route to '" + n.id + "' is malformed");
    }
    for (size_t h = 0; h < r.links.size(); ++h) {
      const int li = r.links[h];
      if (li < 0 || li >= static_cast<int>(links.size()) ||
          links[li].from != r.hops[h] || links[li].to != r.hops[h + 1]) {
        throw Error(ErrorKind::kConfig,
                    "route to '" + n.id + "' uses a link that does not join its hops");
      }
    }
    if (!(r.efficiency_w_per_mbps > 0.0) || !(r.capacity_mbps > 0.0) ||
        !std::isfinite(r.capacity_mbps)) {
      throw Error(ErrorKind::kConfig, "route to '" + n.id +
                                          "' needs positive efficiency and "
                                          "finite positive capacity");
    }
  }
  for (NodeKind k : {NodeKind::kRoomFog, NodeKind::kBuildFog, NodeKind::kCampFog,
                     NodeKind::kMetroFog, NodeKind::kCCloud}) {
    if (per_kind[k] != 1) {
      throw Error(ErrorKind::kConfig,
                  "expected exactly one " + std::string(NodeKindName(k)) + " node");
    }
  }
  for (const auto& l : links) {
    if (!(l.capacity_mbps >= 0.0)) {
      throw Error(ErrorKind::kConfig, "link " + l.from + " -> " + l.to +
                                          " has a negative capacity");
    }
  }
}

std::vector<MobileLink> IdealMobiles() {
  std::vector<MobileLink> out;
  for (int k = 0; k < 8; ++k) {
    out.push_back({kAllWavelengths[k % kNumWavelengths], 10e9, k});
  }
  return out;
}

std::vector<NetworkDevice> ReferenceDevices() {
  return {
      {"OLT", "Tellabs 1134", 400.0, 320.0},
      {"ONU", "FTE7502 10G", 15.0, 10.0},
      {"CloudSwitch", "Cisco 6509", 3800.0, 320.0},
      {"CloudRouter", "Juniper MX-960", 5100.0, 660.0},
      {"CoreRouter", "Cisco CRS-1 16-slot", 13200.0, 1200.0},
      {"Transponder", "ONS15454", 50.0, 10.0},
      {"OpticalSwitch", "Cisco SG220", 63.2, 100.0},
      {"EdgeRouter", "Cisco 12816", 4200.0, 200.0},
      {"AggSwitch", "Cisco 6880", 3800.0, 160.0},
      {"EthSwitch", "Cisco 6880", 3800.0, 160.0},
  };
}

NodeParams& TopologyParams::For(NodeKind kind) {
  return const_cast<NodeParams&>(std::as_const(*this).For(kind));
}

const NodeParams& TopologyParams::For(NodeKind kind) const {
  switch (kind) {
    case NodeKind::kCCloud:
      return ccloud;
    case NodeKind::kMetroFog:
      return metro_fog;
    case NodeKind::kCampFog:
      return camp_fog;
    case NodeKind::kBuildFog:
      return build_fog;
    case NodeKind::kRoomFog:
    case NodeKind::kMobile:
      break;
  }
  return room_fog;
}

TopologyConfig BuildReferenceTopology(const std::vector<MobileLink>& mobiles,
                                      const TopologyParams& params) {
  TopologyConfig t;
  t.devices = params.devices;
  t.mobile_route_efficiency = params.mobile_route_efficiency;
  Builder b(t);
  auto gbps = [&](const char* name) {
    return Device(params.devices, name).capacity_gbps * 1000.0;
  };
  const double olt = gbps("OLT");
  const double edge = gbps("EdgeRouter");

  b.Link(kOlt, "ONU-Room", std::min(olt, params.onu_capacity_mbps));
  b.Link("ONU-Room", "RoomFog", params.onu_capacity_mbps);
  b.Link(kOlt, "EthSwitch-Build", std::min(olt, gbps("EthSwitch")));
  b.Link("EthSwitch-Build", "BuildFog", params.lan_capacity_mbps);
  b.Link(kOlt, "AggSwitch-Camp", std::min(olt, gbps("AggSwitch")));
  b.Link("AggSwitch-Camp", "CampFog", params.lan_capacity_mbps);
  b.Link(kOlt, "EdgeRouter", std::min(olt, edge));
  b.Link("EdgeRouter", "MetroFog", edge);
  b.Link("EdgeRouter", "CoreRouter", std::min(edge, gbps("CoreRouter")));
  b.Link("CoreRouter", "CloudRouter", std::min(gbps("CoreRouter"), gbps("CloudRouter")));
  b.Link("CloudRouter", "CloudSwitch", std::min(gbps("CloudRouter"), gbps("CloudSwitch")));
  b.Link("CloudSwitch", "CCloud", gbps("CloudSwitch"));

  auto add_server = [&](NodeKind kind, std::vector<std::string> hops) {
    const NodeParams& p = params.For(kind);
    const std::string id(NodeKindName(kind));
    t.nodes.push_back({id, kind, p.capacity_mips, p.efficiency_w_per_mips,
                       std::nullopt, -1});
    b.AddRoute(id, std::move(hops), p.route_efficiency_w_per_mbps);
  };
  add_server(NodeKind::kCCloud, {kOlt, "EdgeRouter", "CoreRouter", "CloudRouter",
                                 "CloudSwitch", "CCloud"});
  add_server(NodeKind::kMetroFog, {kOlt, "EdgeRouter", "MetroFog"});
  add_server(NodeKind::kCampFog, {kOlt, "AggSwitch-Camp", "CampFog"});
  add_server(NodeKind::kBuildFog, {kOlt, "EthSwitch-Build", "BuildFog"});
  add_server(NodeKind::kRoomFog, {kOlt, "ONU-Room", "RoomFog"});

  for (size_t k = 0; k < mobiles.size(); ++k) {
    const MobileLink& m = mobiles[k];
    const std::string id = "Mobile" + std::to_string(k);
    if (!m.wavelength) {
      throw Error(ErrorKind::kConfig, id + " has no wavelength tag");
    }
    if (!(m.rate_bps >= 0.0)) {
      throw Error(ErrorKind::kConfig, id + " has a negative OWC rate");
    }
    const std::string onu = "ONU-AP" + std::to_string(m.access_point);
    b.Link(kOlt, onu, std::min(olt, params.onu_capacity_mbps));
    b.Link(onu, id, m.rate_bps / 1e6);
    t.nodes.push_back({id, NodeKind::kMobile, params.mobile_capacity_mips,
                       params.mobile_efficiency_w_per_mips, m.wavelength,
                       m.access_point});
    b.AddRoute(id, {kOlt, onu, id},
               params.mobile_route_efficiency[Index(*m.wavelength)]);
  }
  return t;
}

double RouteCapacity(const TopologyConfig& topology, const Route& route) {
  double cap = std::numeric_limits<double>::infinity();
  for (int li : route.links) cap = std::min(cap, topology.links.at(li).capacity_mbps);
  return cap;
}

double DeriveRouteEfficiency(const std::vector<NetworkDevice>& chain) {
  if (chain.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty device chain");
  }
  double total = 0.0;
  for (const auto& d : chain) {
    if (!(d.capacity_gbps > 0.0)) {
      throw Error(ErrorKind::kConfig, "device '" + d.name + "' has no capacity");
    }
    total += d.power_w / (d.capacity_gbps * 1000.0);
  }
  return total;
}

std::vector<std::string> CheckOrderings(const TopologyConfig& topology) {
  std::vector<std::string> failures;
  auto find = [&](NodeKind kind) -> int {
    for (size_t i = 0; i < topology.nodes.size(); ++i) {
      if (topology.nodes[i].kind == kind) return static_cast<int>(i);
    }
    return -1;
  };
  const NodeKind chain[] = {NodeKind::kCCloud, NodeKind::kMetroFog,
                            NodeKind::kCampFog, NodeKind::kBuildFog,
                            NodeKind::kRoomFog};
  for (NodeKind k : chain) {
    if (find(k) < 0) failures.push_back(std::string(NodeKindName(k)) + " missing");
  }
  if (!failures.empty()) return failures;

  auto eff = [&](int i) { return topology.nodes[i].efficiency_w_per_mips; };
  auto psi = [&](int i) { return topology.routes[i].efficiency_w_per_mbps; };
  for (size_t i = 0; i + 1 < std::size(chain); ++i) {
    const int a = find(chain[i]), b = find(chain[i + 1]);
    if (!(eff(a) < eff(b))) {
      failures.push_back("processing efficiency: " + std::string(NodeKindName(chain[i])) +
                         " should need fewer W/MIPS than " +
                         std::string(NodeKindName(chain[i + 1])));
    }
    if (!(psi(a) > psi(b))) {
      failures.push_back("route efficiency: " + std::string(NodeKindName(chain[i])) +
                         " should cost more W/Mbps than " +
                         std::string(NodeKindName(chain[i + 1])));
    }
  }
  const int room = find(NodeKind::kRoomFog), build = find(NodeKind::kBuildFog);
  for (int m : topology.MobileIndices()) {
    const std::string& id = topology.nodes[m].id;
    if (!(eff(room) < eff(m))) {
      failures.push_back("processing efficiency: RoomFog should beat " + id);
    }
    if (!(psi(room) < psi(m) && psi(m) < psi(build))) {
      failures.push_back("route efficiency: " + id +
                         " should sit between RoomFog and BuildFog");
    }
  }
  const auto& mre = topology.mobile_route_efficiency;
  for (int l = 0; l < kNumWavelengths; ++l) {
    if (!(psi(room) < mre[l] && mre[l] < psi(build))) {
      failures.push_back("mobile route efficiency (" +
                         std::string(WavelengthName(kAllWavelengths[l])) +
                         ") should sit between RoomFog and BuildFog");
    }
  }
  if (mre[Index(Wavelength::kGreen)] != mre[Index(Wavelength::kBlue)]) {
    failures.push_back("green and blue mobile route efficiencies differ");
  }
  return failures;
}

json ToJson(const TopologyConfig& t) {
  json doc;
  json nodes = json::array();
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const ProcessingNode& n = t.nodes[i];
    json j = {{"id", n.id},
              {"kind", NodeKindName(n.kind)},
              {"capacity_mips", n.capacity_mips},
              {"efficiency_w_per_mips", n.efficiency_w_per_mips}};
    if (n.wavelength) j["wavelength"] = WavelengthName(*n.wavelength);
    if (n.access_point >= 0) j["access_point"] = n.access_point;
    nodes.push_back(j);
  }
  doc["processing_nodes"] = nodes;
  json mre = json::object();
  for (Wavelength w : kAllWavelengths) {
    mre[std::string(WavelengthName(w))] = t.mobile_route_efficiency[Index(w)];
  }
  doc["mobile_route_efficiency_w_per_mbps"] = mre;
  json devices = json::array();
  for (const auto& d : t.devices) {
    devices.push_back({{"name", d.name},
                       {"model", d.model},
                       {"power_w", d.power_w},
                       {"capacity_gbps", d.capacity_gbps}});
  }
  doc["network_devices"] = devices;
  json links = json::array();
  for (const auto& l : t.links) {
    links.push_back({{"from", l.from}, {"to", l.to}, {"capacity_mbps", l.capacity_mbps}});
  }
  doc["links"] = links;
  json routes = json::array();
  for (const auto& r : t.routes) {
    routes.push_back({{"destination", r.destination},
                      {"hops", r.hops},
                      {"efficiency_w_per_mbps", r.efficiency_w_per_mbps}});
  }
  doc["routes"] = routes;
  return doc;
}

TopologyConfig FromJson(const json& doc) {
  try {
    TopologyConfig t;
    for (const auto& j : doc.at("processing_nodes")) {
      ProcessingNode n;
      n.id = j.at("id").get<std::string>();
      const auto kind = ParseNodeKind(j.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorKind::kConfig, "unknown node kind for " + n.id);
      n.kind = *kind;
      n.capacity_mips = j.at("capacity_mips").get<double>();
      n.efficiency_w_per_mips = j.at("efficiency_w_per_mips").get<double>();
      if (j.contains("wavelength")) {
        n.wavelength = ParseWavelength(j.at("wavelength").get<std::string>());
        if (!n.wavelength) throw Error(ErrorKind::kConfig, "bad wavelength for " + n.id);
      }
      n.access_point = j.value("access_point", -1);
      t.nodes.push_back(n);
    }
    const auto& mre = doc.at("mobile_route_efficiency_w_per_mbps");
    for (Wavelength w : kAllWavelengths) {
      t.mobile_route_efficiency[Index(w)] =
          mre.at(std::string(WavelengthName(w))).get<double>();
    }
    for (const auto& j : doc.at("network_devices")) {
      t.devices.push_back({j.at("name").get<std::string>(), j.value("model", ""),
                           j.at("power_w").get<double>(),
                           j.at("capacity_gbps").get<double>()});
    }
    for (const auto& j : doc.at("links")) {
      t.links.push_back({j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                         j.at("capacity_mbps").get<double>()});
    }
    Builder b(t);
    std::vector<Route> routes;
    for (const auto& j : doc.at("routes")) {
      Route r;
      r.destination = j.at("destination").get<std::string>();
      r.hops = j.at("hops").get<std::vector<std::string>>();
      for (size_t i = 0; i + 1 < r.hops.size(); ++i) {
        r.links.push_back(b.FindLink(r.hops[i], r.hops[i + 1]));
      }
      r.efficiency_w_per_mbps = j.at("efficiency_w_per_mbps").get<double>();
      r.capacity_mbps = RouteCapacity(t, r);
      routes.push_back(std::move(r));
    }
    // Routes follow node order.
    for (const auto& n : t.nodes) {
      auto it = std::find_if(routes.begin(), routes.end(),
                             [&](const Route& r) { return r.destination == n.id; });
      if (it == routes.end()) {
        throw Error(ErrorKind::kConfig, "no route to '" + n.id + "'");
      }
      t.routes.push_back(*it);
    }
    t.Validate();
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("topology document: ") + e.what());
  }
}

}  // namespace owcfog::topology
