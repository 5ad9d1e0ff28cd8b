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

#include "owcfog/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace owcfog::scenario {

namespace {

constexpr std::uint64_t kS1Seed = 20181;
constexpr std::uint64_t kS2Seed = 20182;

Scenario UniformDraw(const channel::RoomConfig& room, std::string name, int count,
                     std::uint64_t seed) {
  Rng rng(seed);
  Scenario s;
  s.name = std::move(name);
  s.mode = Mode::kFixed;
  s.seed = seed;
  for (int i = 0; i < count; ++i) {
    const double x = rng.Uniform() * room.length;
    const double y = rng.Uniform() * room.width;
    s.users.emplace_back(x, y);
  }
  return s;
}

}  // namespace

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::Poisson(double mean) {
  std::uint64_t count = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 30.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double product = Uniform();
    while (product > limit) {
      ++count;
      product *= Uniform();
    }
  }
  return count;
}

Scenario GeneratePppUsers(const channel::RoomConfig& room, double intensity_per_m2,
                          std::uint64_t seed) {
  if (!(intensity_per_m2 > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "PPP intensity must be > 0");
  }
  Rng rng(seed);
  Scenario s;
  s.name = "ppp";
  s.mode = Mode::kPpp;
  s.seed = seed;
  const std::uint64_t n = rng.Poisson(intensity_per_m2 * room.length * room.width);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = rng.Uniform() * room.length;
    const double y = rng.Uniform() * room.width;
    s.users.emplace_back(x, y);
  }
  return s;
}

Scenario S1Analogue(const channel::RoomConfig& room) {
  return UniformDraw(room, "S1-analogue", 8, kS1Seed);
}

Scenario S2Analogue(const channel::RoomConfig& room) {
  return UniformDraw(room, "S2-analogue", 8, kS2Seed);
}

std::vector<double> LocationBandwidths(const std::vector<channel::ChannelRecord>& records,
                                       size_t locations, size_t aps) {
  const size_t per = aps * kNumWavelengths;
  if (records.size() != locations * per) {
    throw Error(ErrorKind::kInvalidArgument, "record count does not match the grid");
  }
  std::vector<double> out;
  out.reserve(locations);
  for (size_t i = 0; i < locations; ++i) {
    const channel::ChannelRecord* best = &records[i * per];
    for (size_t j = 1; j < per; ++j) {
      const auto& r = records[i * per + j];
      if (r.dc_gain > best->dc_gain) best = &r;
    }
    out.push_back(best->bandwidth_3db_hz);
  }
  return out;
}

std::vector<CdfPoint> BandwidthCdf(std::vector<double> bandwidths) {
  std::sort(bandwidths.begin(), bandwidths.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(bandwidths.size());
  for (size_t i = 0; i < bandwidths.size(); ++i) {
    if (i + 1 < bandwidths.size() && bandwidths[i + 1] == bandwidths[i]) continue;
    out.push_back({bandwidths[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double FractionAtLeast(const std::vector<double>& bandwidths, double threshold_hz) {
  if (bandwidths.empty()) return 0.0;
  const auto n = std::count_if(bandwidths.begin(), bandwidths.end(),
                               [&](double b) { return b >= threshold_hz; });
  return static_cast<double>(n) / static_cast<double>(bandwidths.size());
}

}  // namespace owcfog::scenario
