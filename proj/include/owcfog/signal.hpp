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

// Electrical signal, noise and SINR of WDMA downlink assignments.
//
// For user u served on (a, l), every other access point b contributes on
// wavelength l either interference (when (b, l) carries another user's data)
// or background shot noise (when (b, l) only illuminates). The linearized
// interference sums the squared photocurrents of the interferers; the exact
// form squares their summed current.

#ifndef OWCFOG_SIGNAL_HPP_
#define OWCFOG_SIGNAL_HPP_

#include <optional>
#include <span>
#include <vector>

#include "owcfog/channel.hpp"
#include "owcfog/common.hpp"

namespace owcfog::signal {

struct NoiseParams {
  double electron_charge = kElectronCharge;
  double bandwidth_hz = 5e9;
  double preamp_density = 4.47e-12 * 4.47e-12;  // A^2/Hz
  double responsivity = 0.4;                   // A/W
};

NoiseParams NoiseFor(const channel::ReceiverSpec& rx, Wavelength w);

// (R * received optical power)^2, in A^2.
double ElectricalSignalPower(double rx_power_w, const NoiseParams& np);
double ElectricalSignalPower(const channel::ChannelRecord& record,
                             const NoiseParams& np);
// N_pr * B.
double PreampNoise(const NoiseParams& np);
// 2 e R P B.
double ShotNoise(double rx_power_w, const NoiseParams& np);
double ShotNoise(const channel::ChannelRecord& record, const NoiseParams& np);

// 10 log10(gamma); throws kDomain for gamma <= 0.
double SinrDb(double gamma);

struct Link {
  int ap = 0;
  Wavelength wavelength = Wavelength::kRed;

  // Flat channel index a * 4 + l.
  int Channel() const { return ap * kNumWavelengths + Index(wavelength); }
  static Link FromChannel(int channel) {
    return {channel / kNumWavelengths,
            static_cast<Wavelength>(channel % kNumWavelengths)};
  }
  bool operator==(const Link&) const = default;
};

// Binary selector S[u][a][l].
class Assignment {
 public:
  Assignment() = default;
  Assignment(int users, int aps) : selector_(users, aps, 0.0) {}

  // One link per user; nullopt leaves the user unassigned.
  static Assignment FromLinks(int aps, const std::vector<std::optional<Link>>& links);

  int users() const { return selector_.users(); }
  int aps() const { return selector_.aps(); }
  bool Get(int u, int a, Wavelength w) const {
    return selector_.at(u, a, Index(w)) != 0.0;
  }
  void Set(int u, int a, Wavelength w, bool on) {
    selector_.at(u, a, Index(w)) = on ? 1.0 : 0.0;
  }
  int LinksOfUser(int u) const;
  int UsersOnChannel(int a, Wavelength w) const;
  // The user's link when exactly one is selected.
  std::optional<Link> LinkOf(int u) const;
  // Each user has exactly one link and each channel at most one user.
  bool IsWellFormed() const;

 private:
  LinkTable selector_;
};

// Per-link electrical quantities for a set of users and access points.
struct LinkBudget {
  LinkTable current;  // R * PO * h, A
  LinkTable signal;   // current^2, A^2
  LinkTable shot;     // 2 e current B, A^2
  double preamp = 0.0;

  int users() const { return signal.users(); }
  int aps() const { return signal.aps(); }
};

// `records` are laid out as produced by CharacterizeLocations: user-major,
// then access point (in room order), then wavelength.
LinkBudget MakeLinkBudget(const std::vector<channel::ChannelRecord>& records,
                          int users, int aps, const channel::ReceiverSpec& rx);

enum class SinrMode { kExact, kLinearized };

struct SinrBreakdown {
  int user = 0;
  Link link;
  double signal = 0.0;
  double interference = 0.0;
  double shot = 0.0;
  double preamp = 0.0;
  int interferers = 0;
  double gamma = 0.0;
  double gamma_db = 0.0;  // -inf for a dark link
};

// Throws InfeasibleError ("assignment") for a malformed assignment.
std::vector<SinrBreakdown> Sinr(const Assignment& assignment,
                                const LinkBudget& budget, SinrMode mode);

// Linearized SINR of user `u` on `link` given channel occupancy
// (`channel_user[c]` = user on flat channel c, or -1). Shared by the
// allocator so objective values agree bit-for-bit with Sinr().
double LinearizedGamma(const LinkBudget& budget, int u, const Link& link,
                       std::span<const int> channel_user);

}  // namespace owcfog::signal

#endif  // OWCFOG_SIGNAL_HPP_
