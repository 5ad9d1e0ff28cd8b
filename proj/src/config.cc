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

#include "owcfog/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace owcfog::config {

namespace {

const char* const kSections[] = {"room",     "receiver",  "noise",     "scenario",
                                 "allocation", "topology", "placement", "sweep"};

json PerColour(const PerWavelength<double>& v) {
  return {{"red", v[0]}, {"yellow", v[1]}, {"green", v[2]}, {"blue", v[3]}};
}

PerWavelength<double> ReadColours(const json& j) {
  PerWavelength<double> out{};
  for (Wavelength w : kAllWavelengths) {
    out[Index(w)] = j.at(std::string(WavelengthName(w))).get<double>();
  }
  return out;
}

json NodeDoc(const topology::NodeParams& p) {
  return {{"capacity_mips", p.capacity_mips},
          {"efficiency_w_per_mips", p.efficiency_w_per_mips},
          {"route_efficiency_w_per_mbps", p.route_efficiency_w_per_mbps}};
}

topology::NodeParams ReadNode(const json& j) {
  return {j.at("capacity_mips").get<double>(), j.at("efficiency_w_per_mips").get<double>(),
          j.at("route_efficiency_w_per_mbps").get<double>()};
}

bool Compatible(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

void MergeAt(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) {
    throw Error(ErrorKind::kConfig, "'" + path + "' must be an object");
  }
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) {
      throw Error(ErrorKind::kConfig, "unknown configuration key '" + key + "'");
    }
    json& slot = base[it.key()];
    if (slot.is_object() && it.value().is_object()) {
      MergeAt(slot, it.value(), key);
    } else if (!Compatible(slot, it.value())) {
      throw Error(ErrorKind::kConfig, "configuration key '" + key + "' expects " +
                                          std::string(slot.type_name()) + ", got " +
                                          std::string(it.value().type_name()));
    } else {
      slot = it.value();
    }
  }
}

void CollectLeaves(const json& j, const std::string& path,
                   std::vector<std::string>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (it.value().is_object()) {
      CollectLeaves(it.value(), key, out);
    } else {
      out.push_back(key);
    }
  }
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename F>
auto Read(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("configuration: ") + e.what());
  }
}

}  // namespace

json Defaults() {
  const channel::RoomConfig room = channel::ReferenceRoom();
  const channel::ReceiverSpec rx = channel::ReferenceReceiver();
  json aps = json::array();
  for (const auto& ap : room.access_points) {
    aps.push_back({{"x", ap.position.x},
                   {"y", ap.position.y},
                   {"z", ap.position.z},
                   {"half_power_semi_angle_deg", ap.half_power_semi_angle_deg},
                   {"tx_power_w", PerColour(ap.tx_power_w)}});
  }
  json doc;
  doc["room"] = {
      {"length", room.length},
      {"width", room.width},
      {"height", room.height},
      {"reflectivity",
       {{"walls", PerColour(room.reflectivity.walls)},
        {"ceiling", PerColour(room.reflectivity.ceiling)},
        {"floor", PerColour(room.reflectivity.floor)}}},
      {"element_edge", room.element_edge},
      {"second_order_element_edge", room.second_order_element_edge},
      {"max_elements", room.max_elements},
      {"time_bin_s", room.time_bin_s},
      {"zero_padding", room.zero_padding},
      {"bandwidth_cap_hz", room.bandwidth_cap_hz},
      {"receiver_plane_height", room.receiver_plane_height},
      {"max_reflection_order", 2},
      {"access_points", aps},
      {"grid", {{"nx", 16}, {"ny", 8}}},
  };
  doc["receiver"] = {{"fov_deg", rx.fov_deg},
                     {"area_m2", rx.area_m2},
                     {"responsivity", PerColour(rx.responsivity)},
                     {"bandwidth_hz", rx.bandwidth_hz},
                     {"rate_factor", rx.rate_factor}};
  doc["noise"] = {{"preamp_density", rx.preamp_density}};
  doc["scenario"] = {{"mode", "ppp"},
                     {"intensity_per_m2", 0.25},
                     {"seed", 1},
                     {"users", json::array()}};
  doc["allocation"] = {{"sinr_floor_db", channel::kSinrFloorDb},
                       {"onu_capacity_bps", 10e9},
                       {"time_limit_s", 60.0},
                       {"big_m", 0.0}};
  const topology::TopologyParams tp;
  json devices = json::array();
  for (const auto& d : tp.devices) {
    devices.push_back({{"name", d.name},
                       {"model", d.model},
                       {"power_w", d.power_w},
                       {"capacity_gbps", d.capacity_gbps}});
  }
  doc["topology"] = {
      {"ccloud", NodeDoc(tp.ccloud)},
      {"metro_fog", NodeDoc(tp.metro_fog)},
      {"camp_fog", NodeDoc(tp.camp_fog)},
      {"build_fog", NodeDoc(tp.build_fog)},
      {"room_fog", NodeDoc(tp.room_fog)},
      {"mobile",
       {{"capacity_mips", tp.mobile_capacity_mips},
        {"efficiency_w_per_mips", tp.mobile_efficiency_w_per_mips},
        {"route_efficiency_w_per_mbps", PerColour(tp.mobile_route_efficiency)}}},
      {"lan_capacity_mbps", tp.lan_capacity_mbps},
      {"onu_capacity_mbps", tp.onu_capacity_mbps},
      {"devices", devices},
  };
  doc["placement"] = {{"drr", 0.6},
                      {"workload", 400.0},
                      {"tasks", 50},
                      {"no_self_processing", true},
                      {"alpha", 0.0},
                      {"time_limit_s", 60.0},
                      {"method", "branch_and_bound"}};
  json workloads = json::array();
  for (int w = 100; w <= 1500; w += 100) workloads.push_back(static_cast<double>(w));
  doc["sweep"] = {{"drr_values", {0.002, 0.02, 0.04, 0.06, 0.2, 0.4, 0.6}},
                  {"workload_values", workloads},
                  {"task_count", 50}};
  return doc;
}

void Merge(json& base, const json& user) { MergeAt(base, user, ""); }

json Parse(std::string_view text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("configuration is not valid JSON: ") +
                                        e.what());
  }
  json doc = Defaults();
  Merge(doc, user);
  return doc;
}

json LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read configuration '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

void ApplyOverride(json& doc, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorKind::kConfig, "override '" + std::string(assignment) +
                                        "' is not of the form key=value");
  }
  std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  if (key.find('.') == std::string::npos &&
      std::find(std::begin(kSections), std::end(kSections), key) == std::end(kSections)) {
    std::vector<std::string> leaves;
    CollectLeaves(doc, "", leaves);
    std::vector<std::string> hits;
    for (const auto& l : leaves) {
      const size_t dot = l.rfind('.');
      if (l.substr(dot == std::string::npos ? 0 : dot + 1) == key) hits.push_back(l);
    }
    if (hits.size() != 1) {
      throw Error(ErrorKind::kConfig,
                  hits.empty() ? "unknown configuration key '" + key + "'"
                               : "override key '" + key + "' is ambiguous; use a dotted path");
    }
    key = hits.front();
  }
  const std::vector<std::string> parts = Split(key, '.');
  json* slot = &doc;
  std::string path;
  for (const auto& part : parts) {
    path = path.empty() ? part : path + "." + part;
    if (slot->is_array()) {
      char* end = nullptr;
      const unsigned long i = std::strtoul(part.c_str(), &end, 10);
      if (part.empty() || *end != '\0' || i >= slot->size()) {
        throw Error(ErrorKind::kConfig, "no array element '" + path + "'");
      }
      slot = &(*slot)[i];
    } else if (slot->is_object() && slot->contains(part)) {
      slot = &(*slot)[part];
    } else {
      throw Error(ErrorKind::kConfig, "unknown configuration key '" + path + "'");
    }
  }
  if (slot->is_object() && value.is_object()) {
    MergeAt(*slot, value, key);
  } else if (!Compatible(*slot, value)) {
    throw Error(ErrorKind::kConfig, "configuration key '" + key + "' expects " +
                                        std::string(slot->type_name()) + ", got " +
                                        std::string(value.type_name()));
  } else {
    *slot = value;
  }
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::kIo, "SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string Hash(const json& doc) { return Sha256Hex(doc.dump()); }

channel::RoomConfig Room(const json& doc) {
  return Read([&] {
    const json& r = doc.at("room");
    channel::RoomConfig room;
    room.length = r.at("length").get<double>();
    room.width = r.at("width").get<double>();
    room.height = r.at("height").get<double>();
    room.reflectivity.walls = ReadColours(r.at("reflectivity").at("walls"));
    room.reflectivity.ceiling = ReadColours(r.at("reflectivity").at("ceiling"));
    room.reflectivity.floor = ReadColours(r.at("reflectivity").at("floor"));
    room.element_edge = r.at("element_edge").get<double>();
    room.second_order_element_edge = r.at("second_order_element_edge").get<double>();
    room.max_elements = r.at("max_elements").get<size_t>();
    room.time_bin_s = r.at("time_bin_s").get<double>();
    room.zero_padding = r.at("zero_padding").get<int>();
    room.bandwidth_cap_hz = r.at("bandwidth_cap_hz").get<double>();
    room.receiver_plane_height = r.at("receiver_plane_height").get<double>();
    int id = 0;
    for (const auto& a : r.at("access_points")) {
      channel::AccessPoint ap;
      ap.id = id++;
      ap.position = {a.at("x").get<double>(), a.at("y").get<double>(),
                     a.at("z").get<double>()};
      ap.half_power_semi_angle_deg = a.at("half_power_semi_angle_deg").get<double>();
      ap.tx_power_w = ReadColours(a.at("tx_power_w"));
      room.access_points.push_back(ap);
    }
    const int nx = r.at("grid").at("nx").get<int>();
    const int ny = r.at("grid").at("ny").get<int>();
    if (nx <= 0 || ny <= 0) throw Error(ErrorKind::kConfig, "grid needs nx, ny > 0");
    room.user_grid = channel::UniformGrid(room.length, room.width, nx, ny);
    room.Validate();
    return room;
  });
}

channel::ReceiverSpec Receiver(const json& doc) {
  return Read([&] {
    const json& r = doc.at("receiver");
    channel::ReceiverSpec rx;
    rx.fov_deg = r.at("fov_deg").get<double>();
    rx.area_m2 = r.at("area_m2").get<double>();
    rx.responsivity = ReadColours(r.at("responsivity"));
    rx.bandwidth_hz = r.at("bandwidth_hz").get<double>();
    rx.rate_factor = r.at("rate_factor").get<double>();
    rx.preamp_density = doc.at("noise").at("preamp_density").get<double>();
    rx.Validate();
    return rx;
  });
}

int MaxReflectionOrder(const json& doc) {
  const int order = Read([&] { return doc.at("room").at("max_reflection_order").get<int>(); });
  if (order < 0 || order > 2) {
    throw Error(ErrorKind::kConfig, "max_reflection_order must be 0, 1 or 2");
  }
  return order;
}

scenario::Scenario Scenario(const json& doc, const channel::RoomConfig& room) {
  return Read([&] {
    const json& s = doc.at("scenario");
    const std::string mode = s.at("mode").get<std::string>();
    const auto seed = s.at("seed").get<std::uint64_t>();
    if (mode == "ppp") {
      return scenario::GeneratePppUsers(room, s.at("intensity_per_m2").get<double>(), seed);
    }
    if (mode == "s1") return scenario::S1Analogue(room);
    if (mode == "s2") return scenario::S2Analogue(room);
    if (mode == "fixed") {
      scenario::Scenario out;
      out.name = "fixed";
      out.mode = scenario::Mode::kFixed;
      out.seed = seed;
      for (const auto& u : s.at("users")) {
        if (!u.is_array() || u.size() != 2) {
          throw Error(ErrorKind::kConfig, "scenario.users entries are [x, y] pairs");
        }
        const double x = u[0].get<double>(), y = u[1].get<double>();
        if (x < 0.0 || x > room.length || y < 0.0 || y > room.width) {
          throw Error(ErrorKind::kConfig, "scenario user lies outside the room");
        }
        out.users.emplace_back(x, y);
      }
      return out;
    }
    throw Error(ErrorKind::kConfig,
                "scenario.mode must be one of ppp, fixed, s1, s2 (got '" + mode + "')");
  });
}

AllocationSettings Allocation(const json& doc) {
  return Read([&] {
    const json& a = doc.at("allocation");
    AllocationSettings s;
    s.sinr_floor_db = a.at("sinr_floor_db").get<double>();
    s.onu_capacity_bps = a.at("onu_capacity_bps").get<double>();
    s.time_limit_s = a.at("time_limit_s").get<double>();
    s.big_m = a.at("big_m").get<double>();
    if (!(s.time_limit_s > 0.0) || !(s.onu_capacity_bps > 0.0)) {
      throw Error(ErrorKind::kConfig, "allocation limits must be positive");
    }
    return s;
  });
}

topology::TopologyParams Topology(const json& doc) {
  return Read([&] {
    const json& t = doc.at("topology");
    topology::TopologyParams p;
    p.ccloud = ReadNode(t.at("ccloud"));
    p.metro_fog = ReadNode(t.at("metro_fog"));
    p.camp_fog = ReadNode(t.at("camp_fog"));
    p.build_fog = ReadNode(t.at("build_fog"));
    p.room_fog = ReadNode(t.at("room_fog"));
    p.mobile_capacity_mips = t.at("mobile").at("capacity_mips").get<double>();
    p.mobile_efficiency_w_per_mips = t.at("mobile").at("efficiency_w_per_mips").get<double>();
    p.mobile_route_efficiency = ReadColours(t.at("mobile").at("route_efficiency_w_per_mbps"));
    p.lan_capacity_mbps = t.at("lan_capacity_mbps").get<double>();
    p.onu_capacity_mbps = t.at("onu_capacity_mbps").get<double>();
    p.devices.clear();
    for (const auto& d : t.at("devices")) {
      p.devices.push_back({d.at("name").get<std::string>(), d.value("model", ""),
                           d.at("power_w").get<double>(),
                           d.at("capacity_gbps").get<double>()});
    }
    return p;
  });
}

PlacementSettings Placement(const json& doc) {
  return Read([&] {
    const json& p = doc.at("placement");
    PlacementSettings s;
    s.drr = p.at("drr").get<double>();
    s.workload_mips = p.at("workload").get<double>();
    const double tasks = p.at("tasks").get<double>();
    if (tasks != std::floor(tasks)) {
      throw Error(ErrorKind::kConfig, "placement.tasks must be an integer");
    }
    s.tasks = static_cast<int>(tasks);
    s.no_self_processing = p.at("no_self_processing").get<bool>();
    s.alpha = p.at("alpha").get<double>();
    s.solve.time_limit_s = p.at("time_limit_s").get<double>();
    const std::string method = p.at("method").get<std::string>();
    if (method == "branch_and_bound") {
      s.solve.method = placement::Method::kBranchAndBound;
    } else if (method == "exhaustive") {
      s.solve.method = placement::Method::kExhaustive;
    } else {
      throw Error(ErrorKind::kConfig,
                  "placement.method must be branch_and_bound or exhaustive");
    }
    return s;
  });
}

placement::SweepSpec Sweep(const json& doc) {
  return Read([&] {
    const json& s = doc.at("sweep");
    placement::SweepSpec spec;
    spec.drr_values = s.at("drr_values").get<std::vector<double>>();
    spec.workload_values = s.at("workload_values").get<std::vector<double>>();
    spec.task_count = s.at("task_count").get<int>();
    return spec;
  });
}

}  // namespace owcfog::config
