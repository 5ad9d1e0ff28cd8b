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

// Run configuration: one JSON document with the sections room, receiver,
// noise, scenario, allocation, topology, placement and sweep. User documents
// and overrides are merged onto the defaults; keys the defaults do not have
// are rejected.

#ifndef OWCFOG_CONFIG_HPP_
#define OWCFOG_CONFIG_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "owcfog/channel.hpp"
#include "owcfog/placement.hpp"
#include "owcfog/scenario.hpp"
#include "owcfog/topology.hpp"

namespace owcfog::config {

using nlohmann::json;

json Defaults();

// Merges `user` onto `base`. Throws kConfig naming the first unknown key or
// type mismatch.
void Merge(json& base, const json& user);

// Defaults merged with the document in `path`.
json LoadFile(const std::string& path);
json Parse(std::string_view text);

// "a.b.c=value". The value is read as JSON when it parses, else as a string.
// A key without dots that is not a section name resolves to the unique leaf
// of that name anywhere in the document ("drr" -> placement.drr).
void ApplyOverride(json& doc, std::string_view assignment);

// Lowercase hex SHA-256 of the canonical serialization.
std::string Hash(const json& doc);
std::string Sha256Hex(std::string_view bytes);

channel::RoomConfig Room(const json& doc);
channel::ReceiverSpec Receiver(const json& doc);
int MaxReflectionOrder(const json& doc);

scenario::Scenario Scenario(const json& doc, const channel::RoomConfig& room);

struct AllocationSettings {
  double sinr_floor_db = 14.0;
  double onu_capacity_bps = 10e9;
  double time_limit_s = 60.0;
  double big_m = 0.0;  // 0 selects the default
};
AllocationSettings Allocation(const json& doc);

topology::TopologyParams Topology(const json& doc);

struct PlacementSettings {
  double drr = 0.6;
  double workload_mips = 400.0;
  int tasks = 50;
  bool no_self_processing = true;
  double alpha = 0.0;
  placement::SolveOptions solve;
};
PlacementSettings Placement(const json& doc);

placement::SweepSpec Sweep(const json& doc);

}  // namespace owcfog::config

#endif  // OWCFOG_CONFIG_HPP_
