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

#include "owcfog/signal.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace owcfog::signal {

NoiseParams NoiseFor(const channel::ReceiverSpec& rx, Wavelength w) {
  NoiseParams np;
  np.bandwidth_hz = rx.bandwidth_hz;
  np.preamp_density = rx.preamp_density;
  np.responsivity = rx.responsivity[Index(w)];
  return np;
}

double ElectricalSignalPower(double rx_power_w, const NoiseParams& np) {
  const double i = np.responsivity * rx_power_w;
  return i * i;
}

double ElectricalSignalPower(const channel::ChannelRecord& record,
                             const NoiseParams& np) {
  return ElectricalSignalPower(record.rx_power_w, np);
}

double PreampNoise(const NoiseParams& np) {
  return np.preamp_density * np.bandwidth_hz;
}

double ShotNoise(double rx_power_w, const NoiseParams& np) {
  return 2.0 * np.electron_charge * np.responsivity * rx_power_w *
         np.bandwidth_hz;
}

double ShotNoise(const channel::ChannelRecord& record, const NoiseParams& np) {
  return ShotNoise(record.rx_power_w, np);
}

double SinrDb(double gamma) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorKind::kDomain, "SINR in dB needs a positive ratio");
  }
  return 10.0 * std::log10(gamma);
}

Assignment Assignment::FromLinks(int aps,
                                 const std::vector<std::optional<Link>>& links) {
  Assignment s(static_cast<int>(links.size()), aps);
  for (size_t u = 0; u < links.size(); ++u) {
    if (links[u]) s.Set(static_cast<int>(u), links[u]->ap, links[u]->wavelength, true);
  }
  return s;
}

int Assignment::LinksOfUser(int u) const {
  int n = 0;
  for (int a = 0; a < aps(); ++a) {
    for (Wavelength w : kAllWavelengths) n += Get(u, a, w) ? 1 : 0;
  }
  return n;
}

int Assignment::UsersOnChannel(int a, Wavelength w) const {
  int n = 0;
  for (int u = 0; u < users(); ++u) n += Get(u, a, w) ? 1 : 0;
  return n;
}

std::optional<Link> Assignment::LinkOf(int u) const {
  std::optional<Link> found;
  for (int a = 0; a < aps(); ++a) {
    for (Wavelength w : kAllWavelengths) {
      if (!Get(u, a, w)) continue;
      if (found) return std::nullopt;
      found = Link{a, w};
    }
  }
  return found;
}

bool Assignment::IsWellFormed() const {
  for (int u = 0; u < users(); ++u) {
    if (LinksOfUser(u) != 1) return false;
  }
  for (int a = 0; a < aps(); ++a) {
    for (Wavelength w : kAllWavelengths) {
      if (UsersOnChannel(a, w) > 1) return false;
    }
  }
  return true;
}

LinkBudget MakeLinkBudget(const std::vector<channel::ChannelRecord>& records,
                          int users, int aps, const channel::ReceiverSpec& rx) {
  if (records.size() != static_cast<size_t>(users) * aps * kNumWavelengths) {
    throw Error(ErrorKind::kInvalidArgument,
                "channel record count does not match users x aps x 4");
  }
  LinkBudget b{LinkTable(users, aps), LinkTable(users, aps),
               LinkTable(users, aps), 0.0};
  for (int u = 0; u < users; ++u) {
    for (int a = 0; a < aps; ++a) {
      for (Wavelength w : kAllWavelengths) {
        const auto& rec =
            records[(static_cast<size_t>(u) * aps + a) * kNumWavelengths + Index(w)];
        const NoiseParams np = NoiseFor(rx, w);
        const int l = Index(w);
        b.current.at(u, a, l) = np.responsivity * rec.rx_power_w;
        b.signal.at(u, a, l) = ElectricalSignalPower(rec, np);
        b.shot.at(u, a, l) = ShotNoise(rec, np);
      }
    }
  }
  // The preamplifier term does not depend on the wavelength.
  b.preamp = PreampNoise(NoiseFor(rx, Wavelength::kRed));
  return b;
}

double LinearizedGamma(const LinkBudget& budget, int u, const Link& link,
                       std::span<const int> channel_user) {
  const int l = Index(link.wavelength);
  double denom = 0.0;
  for (int b = 0; b < budget.aps(); ++b) {
    if (b == link.ap) continue;
    const int other = channel_user[b * kNumWavelengths + l];
    if (other >= 0 && other != u) {
      denom += budget.signal.at(u, b, l);
    } else {
      denom += budget.shot.at(u, b, l);
    }
  }
  denom += budget.preamp;
  const double p = budget.signal.at(u, link.ap, l);
  if (denom <= 0.0) return p > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return p / denom;
}

std::vector<SinrBreakdown> Sinr(const Assignment& assignment,
                                const LinkBudget& budget, SinrMode mode) {
  if (assignment.users() != budget.users() || assignment.aps() != budget.aps()) {
    throw Error(ErrorKind::kInvalidArgument,
                "assignment and link budget dimensions differ");
  }
  if (!assignment.IsWellFormed()) {
    throw InfeasibleError("assignment",
                          "assignment must give every user exactly one link "
                          "and every channel at most one user");
  }
  const int n_ch = budget.aps() * kNumWavelengths;
  std::vector<int> channel_user(static_cast<size_t>(n_ch), -1);
  std::vector<Link> links(static_cast<size_t>(assignment.users()));
  for (int u = 0; u < assignment.users(); ++u) {
    links[u] = *assignment.LinkOf(u);
    channel_user[links[u].Channel()] = u;
  }

  std::vector<SinrBreakdown> out;
  out.reserve(links.size());
  for (int u = 0; u < assignment.users(); ++u) {
    const Link& link = links[u];
    const int l = Index(link.wavelength);
    SinrBreakdown br;
    br.user = u;
    br.link = link;
    br.signal = budget.signal.at(u, link.ap, l);
    br.preamp = budget.preamp;
    double current_sum = 0.0;
    double squares = 0.0;
    for (int b = 0; b < budget.aps(); ++b) {
      if (b == link.ap) continue;
      const int other = channel_user[b * kNumWavelengths + l];
      if (other >= 0 && other != u) {
        const double i = budget.current.at(u, b, l);
        current_sum += i;
        squares += budget.signal.at(u, b, l);
        if (i > 0.0) ++br.interferers;
      } else {
        br.shot += budget.shot.at(u, b, l);
      }
    }
    if (mode == SinrMode::kLinearized) {
      br.interference = squares;
      br.gamma = LinearizedGamma(budget, u, link, channel_user);
    } else {
      br.interference = current_sum * current_sum;
      const double denom = br.interference + br.shot + br.preamp;
      br.gamma = denom > 0.0 ? br.signal / denom
                             : std::numeric_limits<double>::infinity();
    }
    br.gamma_db = br.gamma > 0.0 ? SinrDb(br.gamma)
                                 : -std::numeric_limits<double>::infinity();
    out.push_back(br);
  }
  return out;
}

}  // namespace owcfog::signal
