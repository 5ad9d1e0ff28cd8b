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

// User placements on the receiver plane and channel-derived summaries.

#ifndef OWCFOG_SCENARIO_HPP_
#define OWCFOG_SCENARIO_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "owcfog/channel.hpp"

namespace owcfog::scenario {

// Name recorded in run manifests. Uniform variates take the top 53 bits of
// mt19937_64; Poisson counts use Knuth's product method on 30-mean chunks.
inline constexpr const char* kRngName = "mt19937_64+u53+knuth-poisson/1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [0, 1).
  double Uniform();
  std::uint64_t Poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

enum class Mode { kPpp, kFixed };

struct Scenario {
  std::string name;
  Mode mode = Mode::kFixed;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> users;
};

// Poisson number of users with mean intensity * floor area, uniform over the
// receiver plane. Throws kInvalidArgument for intensity <= 0.
Scenario GeneratePppUsers(const channel::RoomConfig& room, double intensity_per_m2,
                          std::uint64_t seed);

// Seeded 8-user uniform draws standing in for the two fixed 8-user layouts.
Scenario S1Analogue(const channel::RoomConfig& room);
Scenario S2Analogue(const channel::RoomConfig& room);

struct CdfPoint {
  double bandwidth_hz = 0.0;
  double fraction = 0.0;  // share of locations with bandwidth <= this value
};

// Per location the link with the largest DC gain represents its bandwidth;
// records are laid out as CharacterizeLocations produces them.
std::vector<double> LocationBandwidths(const std::vector<channel::ChannelRecord>& records,
                                       size_t locations, size_t aps);
std::vector<CdfPoint> BandwidthCdf(std::vector<double> bandwidths);
double FractionAtLeast(const std::vector<double>& bandwidths, double threshold_hz);

}  // namespace owcfog::scenario

#endif  // OWCFOG_SCENARIO_HPP_
