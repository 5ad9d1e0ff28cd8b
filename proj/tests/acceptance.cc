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

// Acceptance checks: one PASS/FAIL line per criterion on stdout, exit status
// 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "owcfog/channel.hpp"
#include "owcfog/config.hpp"
#include "owcfog/placement.hpp"
#include "owcfog/scenario.hpp"
#include "owcfog/signal.hpp"
#include "owcfog/topology.hpp"
#include "owcfog/wdma.hpp"

using namespace owcfog;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

topology::TopologyConfig Ideal() {
  return topology::BuildReferenceTopology(topology::IdealMobiles());
}

placement::PlacementProblem Tasks(const topology::TopologyConfig& t, double w, double drr,
                                  int n) {
  placement::PlacementProblem p;
  p.topology = t;
  p.tasks = placement::DemandsFromDrr(w, drr, n, t.MobileIndices());
  return p;
}

void PlacementRegimes(Outcome& o) {
  const auto t = Ideal();
  struct Case {
    double drr;
    const char* node;
    double total;
  };
  for (const Case& c : {Case{0.002, "CCloud", 1.052}, Case{0.02, "MetroFog", 2.716},
                        Case{0.04, "RoomFog", 3.06}}) {
    const auto p = Tasks(t, 1000.0, c.drr, 1);
    const auto s = placement::Solve(p);
    const std::string got = t.nodes[s.node_of_task[0]].id;
    o.Require(got == c.node, "DRR " + std::to_string(c.drr) + " placed at " + got);
    o.Require(std::abs(s.objective - c.total) <= 1e-9,
              "DRR " + std::to_string(c.drr) + " total " + std::to_string(s.objective));
    o.detail << "DRR " << c.drr << " -> " << got << " " << s.objective << " W; ";
  }
  const auto p04 = Tasks(t, 1000.0, 0.04, 1);
  auto cost = [&](const placement::PlacementProblem& p, const char* n) {
    return placement::PlacementCost(p, p.tasks[0], t.NodeIndex(n));
  };
  o.Require(cost(p04, "RoomFog") < cost(p04, "BuildFog") &&
                cost(p04, "BuildFog") < cost(p04, "MetroFog"),
            "cost order RoomFog < BuildFog < MetroFog at DRR 0.04");
  const auto p06 = Tasks(t, 1000.0, 0.06, 1);
  const double mob = cost(p06, "Mobile0"), metro = cost(p06, "MetroFog");
  o.Require(std::abs(mob - 4.133) <= 1e-3 && std::abs(mob - 4.1332) <= 1e-9,
            "red mobile cost " + std::to_string(mob));
  o.Require(std::abs(metro - 5.568) <= 1e-9, "MetroFog cost " + std::to_string(metro));
  o.Require(mob < metro, "mobile cheaper than MetroFog at DRR 0.06");
  o.detail << "DRR 0.06 red mobile " << mob << " W < MetroFog " << metro << " W";
}

void Utilization(Outcome& o) {
  const auto t = Ideal();
  struct Case {
    double w;
    double pct;
  };
  for (const Case& c : {Case{400, 80.0}, Case{700, 93.33}, Case{800, 53.33}}) {
    const auto p = Tasks(t, c.w, 0.6, 50);
    const auto s = placement::Solve(p);
    double lo = 1e9, hi = 0.0;
    for (const auto& u : placement::MakeUtilizationReport(p, s)) {
      lo = std::min(lo, 100.0 * u.utilization);
      hi = std::max(hi, 100.0 * u.utilization);
    }
    o.Require(std::abs(lo - c.pct) <= 0.5 && std::abs(hi - c.pct) <= 0.5,
              "W " + std::to_string(c.w) + " utilization " + std::to_string(lo) + ".." +
                  std::to_string(hi));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "W %.0f -> %.2f%%; ", c.w, lo);
    o.detail << buf;
  }
}

void FullSweep(Outcome& o) {
  const auto t = Ideal();
  placement::SweepSpec spec;
  spec.drr_values = {0.002, 0.02, 0.04, 0.06, 0.2, 0.4, 0.6};
  for (int w = 100; w <= 1500; w += 100) spec.workload_values.push_back(w);
  spec.task_count = 50;
  const auto rows = placement::Sweep(t, spec);
  o.Require(rows.size() == 105, "105 cells");
  int feasible = 0, reported = 0;
  for (const auto& r : rows) {
    if (r.feasible) {
      ++feasible;
    } else if (!r.infeasible_constraint.empty()) {
      ++reported;
    } else {
      o.Require(false, "cell without a status");
    }
  }
  const size_t nw = spec.workload_values.size();
  for (size_t wi = 0; wi < nw; ++wi) {
    double prev = -1.0;
    for (size_t di = 0; di < spec.drr_values.size(); ++di) {
      const auto& r = rows[di * nw + wi];
      if (!r.feasible) continue;
      o.Require(r.power.total_w >= prev - 1e-9,
                "total power falls at W " + std::to_string(r.workload_mips));
      prev = r.power.total_w;
    }
  }
  const int cc = t.NodeIndex("CCloud");
  double ccloud = 0.0;
  for (size_t wi = 0; wi < nw; ++wi) {
    const auto& r = rows[(spec.drr_values.size() - 1) * nw + wi];
    if (r.feasible) ccloud += r.power.nodes[cc].workload_mips;
  }
  o.Require(ccloud == 0.0, "CCloud workload at DRR 0.6");
  o.detail << feasible << " cells solved, " << reported
           << " reported infeasible; totals nondecreasing in DRR; CCloud workload at DRR 0.6 = "
           << ccloud << " MIPS";
}

struct AllocInstance {
  std::vector<channel::ChannelRecord> records;
  int users = 0;
  int aps = 0;
  double onu = 10e9;
};

AllocInstance RandomAllocation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AllocInstance in;
  in.users = 1 + static_cast<int>(rng() % 4);
  in.aps = 2 + static_cast<int>(rng() % 3);
  in.onu = unit(rng) < 0.3 ? 4e9 + 6e9 * unit(rng) : 10e9;
  for (int u = 0; u < in.users; ++u) {
    const int home = static_cast<int>(rng() % in.aps);
    for (int a = 0; a < in.aps; ++a) {
      for (Wavelength w : kAllWavelengths) {
        channel::ChannelRecord r;
        r.ap_id = a;
        r.wavelength = w;
        const double base = a == home ? 20e-6 : 3e-6 * unit(rng) * unit(rng);
        r.rx_power_w = base * (0.5 + unit(rng));
        r.bandwidth_3db_hz = 1e9 + 5e9 * unit(rng);
        r.rate_bps = std::min(r.bandwidth_3db_hz, 5e9);
        in.records.push_back(r);
      }
    }
  }
  return in;
}

void AllocatorSuite(Outcome& o) {
  std::mt19937_64 rng(20240601);
  const auto rx = channel::ReferenceReceiver();
  int solved = 0, drawn = 0, matched = 0;
  while (solved < 200) {
    const AllocInstance in = RandomAllocation(rng);
    ++drawn;
    const auto p = wdma::MakeProblem(in.records, in.users, in.aps, rx, channel::kSinrFloorDb,
                                     in.onu);
    wdma::AllocationSolution ex;
    try {
      ex = wdma::SolveExhaustive(p);
    } catch (const InfeasibleError&) {
      continue;  // only feasible instances count
    }
    ++solved;
    const auto model = wdma::BuildModel(p);
    const auto bb = wdma::SolveBranchAndBound(model);
    if (std::abs(bb.objective - ex.objective) <= 1e-6 * std::abs(ex.objective)) ++matched;
    const auto x = model.PointFor(bb.assignment);
    for (const auto& v : model.Violations(x, 1e-6)) o.Require(false, "row " + v);
    o.Require(wdma::CheckFeasibility(bb.assignment, p).empty(), "feasibility audit");
    std::vector<double> per_ap(in.aps, 0.0);
    for (int u = 0; u < in.users; ++u) {
      o.Require(bb.gamma[u] >= std::pow(10.0, 1.4) * (1 - 1e-12), "SINR floor");
      per_ap[bb.links[u].ap] += p.rate_bps.at(u, bb.links[u].ap, Index(bb.links[u].wavelength));
    }
    for (double r : per_ap) o.Require(r <= 10e9 * (1 + 1e-12), "ONU capacity");
  }
  o.Require(matched == solved, "branch and bound differs from exhaustive");
  o.detail << solved << " feasible instances (" << drawn << " drawn), " << matched
           << " objective matches with exhaustive enumeration";
}

void Linearization(Outcome& o) {
  std::mt19937_64 rng(1400);
  const auto rx = channel::ReferenceReceiver();
  int points = 0;
  double worst = 0.0;
  while (points < 1000) {
    const AllocInstance in = RandomAllocation(rng);
    const auto p = wdma::MakeProblem(in.records, in.users, in.aps, rx, channel::kSinrFloorDb,
                                     in.onu);
    const auto model = wdma::BuildModel(p);
    const double beta = model.big_m();
    for (int rep = 0; rep < 5 && points < 1000; ++rep) {
      // An integer point: one link per user, one user per channel.
      std::vector<int> ch(in.aps * kNumWavelengths);
      for (size_t c = 0; c < ch.size(); ++c) ch[c] = static_cast<int>(c);
      std::shuffle(ch.begin(), ch.end(), rng);
      std::vector<std::optional<signal::Link>> links;
      for (int u = 0; u < in.users; ++u) links.push_back(signal::Link::FromChannel(ch[u]));
      const auto x = model.PointFor(signal::Assignment::FromLinks(in.aps, links));
      ++points;
      for (size_t v = 0; v < x.size(); ++v) {
        const auto& var = model.variables()[v];
        if (var.kind != wdma::VarKind::kPhi) continue;
        const double target =
            x[model.Gamma(var.u, var.a, var.l)] * x[model.Selector(var.m, var.b, var.l)];
        const auto [lo, hi] = model.ImpliedBounds(static_cast<int>(v), x, {"phi_"});
        worst = std::max({worst, std::abs(lo - target) / beta, std::abs(hi - target) / beta});
      }
    }
  }
  // The lower big-M row evaluates (gamma + beta) - beta, exact up to the
  // rounding of beta.
  o.Require(worst <= 1e-12, "phi bounds off by " + std::to_string(worst) + " beta");
  o.detail << points << " integer points, phi bounds collapse to gamma*S (max deviation "
           << worst << " x beta)";
}

void SinrPhysics(Outcome& o) {
  const auto rx = channel::ReferenceReceiver();
  auto records = [](int users, int aps, const std::function<double(int, int)>& power) {
    std::vector<channel::ChannelRecord> out;
    for (int u = 0; u < users; ++u) {
      for (int a = 0; a < aps; ++a) {
        for (Wavelength w : kAllWavelengths) {
          channel::ChannelRecord r;
          r.ap_id = a;
          r.wavelength = w;
          r.rx_power_w = power(u, a);
          out.push_back(r);
        }
      }
    }
    return out;
  };
  auto sinr = [&](int n, double own, double other, signal::SinrMode mode) {
    const auto b = signal::MakeLinkBudget(
        records(n, n, [&](int u, int a) { return u == a ? own : other; }), n, n, rx);
    std::vector<std::optional<signal::Link>> links;
    for (int u = 0; u < n; ++u) links.push_back(signal::Link{u, Wavelength::kRed});
    return signal::Sinr(signal::Assignment::FromLinks(n, links), b, mode)[0];
  };
  const auto e1 = sinr(2, 3e-6, 4e-7, signal::SinrMode::kExact);
  const auto l1 = sinr(2, 3e-6, 4e-7, signal::SinrMode::kLinearized);
  o.Require(e1.interference == l1.interference && e1.gamma == l1.gamma,
            "single interferer modes differ");
  const auto e2 = sinr(3, 3e-6, 4e-7, signal::SinrMode::kExact);
  const auto l2 = sinr(3, 3e-6, 4e-7, signal::SinrMode::kLinearized);
  const double ratio = e2.interference / l2.interference;
  o.Require(std::abs(ratio - 2.0) <= 1e-12, "two-interferer ratio " + std::to_string(ratio));
  const auto np = signal::NoiseFor(rx, Wavelength::kRed);
  const double orders =
      std::log10(signal::ElectricalSignalPower(1e-6, np) / signal::ShotNoise(1e-6, np));
  o.Require(std::abs(orders - 4.0) <= 1.0, "shot noise is " + std::to_string(orders) +
                                               " orders below signal at 1 uW, expected 4 +/- 1");
  o.detail << "one interferer: equal; two equal interferers: exact/linearized = " << ratio
           << "; signal/shot at 1 uW = 10^" << orders << " (R = " << np.responsivity
           << " A/W, B = " << np.bandwidth_hz << " Hz)";
}

void ChannelProperties(Outcome& o) {
  const double m60 = channel::LambertianOrder(60.0);
  // cos of the rounded pi/3 is 0.5 + 1 ulp.
  o.Require(std::abs(m60 - 1.0) <= 4e-16, "Lambertian order at 60 deg " + std::to_string(m60));
  for (int k : {10, 100}) {
    channel::ImpulseResponse ir;
    ir.bin_width_s = 1e-11;
    ir.bin_power_w.assign(k + 1, 0.0);
    ir.bin_power_w.front() = ir.bin_power_w.back() = 1.0;
    const double delta = k * 1e-11;
    o.Require(std::abs(channel::DelaySpread(ir) - delta / 2) <= 1e-12 * delta,
              "delay spread oracle");
    o.Require(std::abs(channel::Bandwidth3dB(ir, 4, 5e10) - 1 / (4 * delta)) <=
                  1e-9 / (4 * delta),
              "bandwidth oracle");
  }
  const auto room = channel::ReferenceRoom();
  const auto narrow = channel::ReferenceReceiver();
  auto wide = narrow;
  wide.fov_deg = 90.0;
  const auto a = channel::CharacterizeLocations(room, narrow, room.user_grid, 2);
  const auto b = channel::CharacterizeLocations(room, wide, room.user_grid, 2);
  int links = 0, direct_lost = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const auto& ap = room.access_points[(i / kNumWavelengths) % room.access_points.size()];
    const Vec3 pos{a[i].user_x, a[i].user_y, room.receiver_plane_height};
    if (channel::LosGain(ap, narrow, pos) == 0.0) {
      ++direct_lost;
      continue;
    }
    ++links;
    o.Require(a[i].bandwidth_3db_hz >= b[i].bandwidth_3db_hz * (1 - 1e-12),
              "bandwidth fell under the narrow view");
  }
  const auto la = scenario::LocationBandwidths(a, 128, 8);
  const auto lb = scenario::LocationBandwidths(b, 128, 8);
  for (size_t i = 0; i < la.size(); ++i) {
    o.Require(la[i] >= lb[i] * (1 - 1e-12), "location bandwidth fell under the narrow view");
  }
  const double frac = scenario::FractionAtLeast(la, 4e9);
  o.detail << "m(60) - 1 = " << m60 - 1.0 << "; oracles ok; FOV 40 vs 90 deg on "
           << links << " direct links and 128 locations (" << direct_lost
           << " links without a direct path excluded); locations >= 4 GHz: " << 100.0 * frac
           << "% (reference figure about 60%, qualitative)";
}

void SinrFloor(Outcome& o) {
  const config::json cfg = config::Defaults();
  const auto room = config::Room(cfg);
  const auto rx = config::Receiver(cfg);
  std::vector<scenario::Scenario> scenarios = {scenario::S1Analogue(room),
                                               scenario::S2Analogue(room)};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    scenarios.push_back(scenario::GeneratePppUsers(room, 0.25, seed));
  }
  double check_s = 0.0;
  int users = 0, fec = 0;
  for (const auto& s : scenarios) {
    if (s.users.empty()) continue;
    const int n = static_cast<int>(s.users.size());
    const auto recs = channel::CharacterizeLocations(room, rx, s.users, 2);
    const auto p = wdma::MakeProblem(recs, n, 8, rx);
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = wdma::SolveBranchAndBound(wdma::BuildModel(p));
    double lo = 1e300, hi = 0.0;
    for (int u = 0; u < n; ++u) {
      ++users;
      const auto l = sol.links[u];
      const double base = p.rate_bps.at(u, l.ap, Index(l.wavelength));
      o.Require(sol.gamma_db[u] >= 14.0, s.name + " user below 14 dB");
      const bool penalized = sol.gamma_db[u] < 15.6;
      fec += penalized ? 1 : 0;
      o.Require(sol.rate_bps[u] == (penalized ? 0.9 * base : base), s.name + " FEC rule");
      lo = std::min(lo, sol.rate_bps[u]);
      hi = std::max(hi, sol.rate_bps[u]);
    }
    check_s += Seconds(t0);
    if (s.name != "ppp") {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%s rates %.2f-%.2f Gbit/s; ", s.name.c_str(), lo / 1e9,
                    hi / 1e9);
      o.detail << buf;
    }
  }
  o.Require(check_s < 1.0, "allocation and checks took " + std::to_string(check_s) + " s");
  o.detail << users << " users over " << scenarios.size() << " scenarios, " << fec
           << " with the FEC penalty; allocation+checks " << check_s << " s";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "placement regimes", 1.0, PlacementRegimes},
      {2, "mobile utilization", 10.0, Utilization},
      {3, "full sweep envelope", 600.0, FullSweep},
      {4, "allocator constraints and oracle", 300.0, AllocatorSuite},
      {5, "big-M linearization", 60.0, Linearization},
      {6, "SINR physics", 1.0, SinrPhysics},
      {7, "channel properties", 300.0, ChannelProperties},
      {8, "SINR floor and FEC", 300.0, SinrFloor},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double s = Seconds(t0);
    if (s > c.budget_s) {
      o.pass = false;
      o.detail << " [over the " << c.budget_s << " s budget]";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
