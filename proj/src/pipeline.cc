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

#include "owcfog/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "owcfog/channel.hpp"
#include "owcfog/config.hpp"
#include "owcfog/placement.hpp"
#include "owcfog/scenario.hpp"
#include "owcfog/signal.hpp"
#include "owcfog/topology.hpp"
#include "owcfog/wdma.hpp"

namespace owcfog::pipeline {

namespace fs = std::filesystem;

namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { Row(header); }

  void Row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

class Bundle {
 public:
  Bundle(const RunOptions& opts, std::string stage, const json& cfg)
      : dir_(opts.out_dir), stage_(std::move(stage)), cfg_(cfg) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw Error(ErrorKind::kIo, "cannot create output directory '" + dir_.string() +
                                      "': " + ec.message());
    }
  }

  void Write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + (dir_ / name).string());
    files_[name] = config::Sha256Hex(content);
  }

  StageResult Finish(json summary) {
    json manifest;
    manifest["version"] = kVersion;
    manifest["stage"] = stage_;
    manifest["config_sha256"] = config::Hash(cfg_);
    manifest["seed"] = cfg_.at("scenario").at("seed");
    manifest["rng"] = scenario::kRngName;
    manifest["files"] = files_;
    manifest["summary"] = summary;
    manifest["config"] = cfg_;
    Write("manifest", manifest.dump(2) + "\n");
    StageResult r;
    r.stage = stage_;
    for (const auto& [name, hash] : files_) r.files.push_back((dir_ / name).string());
    r.summary = std::move(summary);
    return r;
  }

 private:
  fs::path dir_;
  std::string stage_;
  json cfg_;
  std::map<std::string, std::string> files_;
};

const std::vector<std::string> kChannelHeader = {
    "user_x", "user_y", "ap_id", "wavelength", "h", "rx_power_w",
    "delay_spread_s", "bw_3db_hz", "rate_bps"};

std::string ChannelCsv(const std::vector<channel::ChannelRecord>& records) {
  Csv csv(kChannelHeader);
  for (const auto& r : records) {
    csv.Row({Num(r.user_x), Num(r.user_y), std::to_string(r.ap_id),
             std::string(WavelengthName(r.wavelength)), Num(r.dc_gain),
             Num(r.rx_power_w), Num(r.delay_spread_s), Num(r.bandwidth_3db_hz),
             Num(r.rate_bps)});
  }
  return csv.str();
}

std::string ScenarioCsv(const scenario::Scenario& s) {
  Csv csv({"user", "x", "y"});
  for (size_t u = 0; u < s.users.size(); ++u) {
    csv.Row({std::to_string(u), Num(s.users[u].first), Num(s.users[u].second)});
  }
  return csv.str();
}

struct AllocationOutcome {
  scenario::Scenario scenario;
  channel::RoomConfig room;
  std::vector<channel::ChannelRecord> records;
  std::optional<wdma::AllocationSolution> solution;
  std::vector<signal::SinrBreakdown> linearized;
  std::vector<signal::SinrBreakdown> exact;
};

AllocationOutcome Allocate(const json& cfg) {
  AllocationOutcome out;
  out.room = config::Room(cfg);
  const channel::ReceiverSpec rx = config::Receiver(cfg);
  out.scenario = config::Scenario(cfg, out.room);
  const auto settings = config::Allocation(cfg);
  if (out.scenario.users.empty()) return out;
  out.records = channel::CharacterizeLocations(out.room, rx, out.scenario.users,
                                               config::MaxReflectionOrder(cfg));
  const int users = static_cast<int>(out.scenario.users.size());
  const int aps = static_cast<int>(out.room.access_points.size());
  const wdma::AllocationProblem problem = wdma::MakeProblem(
      out.records, users, aps, rx, settings.sinr_floor_db, settings.onu_capacity_bps);
  std::optional<double> big_m;
  if (settings.big_m > 0.0) big_m = settings.big_m;
  const wdma::LinearizedModel model = wdma::BuildModel(problem, big_m);
  out.solution = wdma::SolveBranchAndBound(model, settings.time_limit_s);
  out.linearized = signal::Sinr(out.solution->assignment, problem.budget,
                                signal::SinrMode::kLinearized);
  out.exact = signal::Sinr(out.solution->assignment, problem.budget,
                           signal::SinrMode::kExact);
  return out;
}

void WriteAllocation(Bundle& b, const AllocationOutcome& a, json& summary) {
  Csv alloc({"user", "ap_id", "wavelength", "sinr_db", "rate_bps"});
  Csv breakdown({"user", "signal_a2", "interference_a2", "exact_interference_a2",
                 "shot_a2", "preamp_a2", "interferers", "sinr_db", "exact_sinr_db"});
  Csv stats({"objective", "node_count", "gap"});
  if (a.solution) {
    const auto& s = *a.solution;
    for (size_t u = 0; u < s.links.size(); ++u) {
      alloc.Row({std::to_string(u),
                 std::to_string(a.room.access_points[s.links[u].ap].id),
                 std::string(WavelengthName(s.links[u].wavelength)), Num(s.gamma_db[u]),
                 Num(s.rate_bps[u])});
      const auto& l = a.linearized[u];
      const auto& e = a.exact[u];
      breakdown.Row({std::to_string(u), Num(l.signal), Num(l.interference),
                     Num(e.interference), Num(l.shot), Num(l.preamp),
                     std::to_string(l.interferers), Num(l.gamma_db), Num(e.gamma_db)});
    }
    stats.Row({Num(s.objective), std::to_string(s.stats.nodes), Num(s.stats.gap)});
    double lo = 1e300, hi = 0.0;
    for (double r : s.rate_bps) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    summary["objective"] = s.objective;
    summary["node_count"] = s.stats.nodes;
    summary["gap"] = s.stats.gap;
    summary["optimal"] = s.stats.optimal;
    summary["min_rate_bps"] = lo;
    summary["max_rate_bps"] = hi;
  }
  summary["users"] = a.scenario.users.size();
  summary["scenario"] = a.scenario.name;
  b.Write("scenario.csv", ScenarioCsv(a.scenario));
  b.Write("channel.csv", ChannelCsv(a.records));
  b.Write("allocation.csv", alloc.str());
  b.Write("allocation_sinr.csv", breakdown.str());
  b.Write("allocation_summary.csv", stats.str());
}

std::vector<std::string> PlacementHeader(const topology::TopologyConfig& t) {
  std::vector<std::string> h = {"drr", "workload_mips", "total_power_w",
                                "processing_power_w", "networking_power_w"};
  for (const auto& n : t.nodes) {
    h.push_back(n.id + "_workload_mips");
    h.push_back(n.id + "_processing_w");
    h.push_back(n.id + "_networking_w");
  }
  h.push_back("status");
  return h;
}

std::vector<std::string> PlacementRow(double drr, double w,
                                      const placement::PowerReport& p,
                                      const std::string& status) {
  std::vector<std::string> row = {Num(drr), Num(w), Num(p.total_w), Num(p.processing_w),
                                  Num(p.networking_w)};
  for (const auto& n : p.nodes) {
    row.push_back(Num(n.workload_mips));
    row.push_back(Num(n.processing_w));
    row.push_back(Num(n.networking_w));
  }
  row.push_back(status);
  return row;
}

// A placement outcome reduced to what the figure tables need.
struct Cell {
  double drr = 0.0;
  double workload = 0.0;
  placement::PowerReport power;
  std::vector<placement::MobileUtilization> utilization;
  std::string status;
};

std::string FigureCsv(std::string_view fig, const topology::TopologyConfig& t,
                      const std::vector<Cell>& cells) {
  std::vector<std::string> header = {"drr", "workload_mips"};
  if (fig == "7a") header.push_back("processing_power_w");
  if (fig == "7b") header.push_back("networking_power_w");
  if (fig == "7c") header.push_back("total_power_w");
  if (fig == "8") {
    header.push_back("flow_mbps");
    for (const auto& n : t.nodes) header.push_back(n.id + "_workload_mips");
    header.push_back("networking_power_w");
  }
  if (fig == "9") {
    for (const auto& n : t.nodes) header.push_back(n.id + "_networking_w");
  }
  if (fig == "10") {
    header.insert(header.end(),
                  {"processing_power_w", "networking_power_w", "total_power_w"});
  }
  if (fig == "11") {
    header.insert(header.end(), {"flow_mbps", "mobile_id", "wavelength", "utilization"});
  }
  header.push_back("status");
  Csv csv(header);
  for (const Cell& c : cells) {
    const std::vector<std::string> key = {Num(c.drr), Num(c.workload)};
    const auto& p = c.power;
    std::vector<std::string> row = key;
    if (fig == "7a") row.push_back(Num(p.processing_w));
    if (fig == "7b") row.push_back(Num(p.networking_w));
    if (fig == "7c") row.push_back(Num(p.total_w));
    if (fig == "8") {
      row.push_back(Num(c.drr * c.workload));
      for (const auto& n : p.nodes) row.push_back(Num(n.workload_mips));
      row.push_back(Num(p.networking_w));
    }
    if (fig == "9") {
      for (const auto& n : p.nodes) row.push_back(Num(n.networking_w));
    }
    if (fig == "10") {
      row.insert(row.end(), {Num(p.processing_w), Num(p.networking_w), Num(p.total_w)});
    }
    if (fig == "11") {
      for (const auto& u : c.utilization) {
        std::vector<std::string> r = key;
        r.insert(r.end(), {Num(c.drr * c.workload), u.id,
                           std::string(WavelengthName(u.wavelength)), Num(u.utilization),
                           c.status});
        csv.Row(r);
      }
      continue;
    }
    row.push_back(c.status);
    csv.Row(row);
  }
  return csv.str();
}

void CheckFigure(const RunOptions& opts) {
  if (!opts.fig.empty() && !IsFigure(opts.fig)) {
    throw Error(ErrorKind::kInvalidArgument,
                "--fig must be one of 7a, 7b, 7c, 8, 9, 10, 11 (got '" + opts.fig + "')");
  }
}

struct PlacementOutcome {
  placement::PlacementProblem problem;
  placement::PlacementSolution solution;
  Cell cell;
};

PlacementOutcome Place(const json& cfg, const topology::TopologyConfig& topo) {
  const auto settings = config::Placement(cfg);
  PlacementOutcome out;
  out.problem.topology = topo;
  out.problem.alpha = settings.alpha;
  out.problem.no_self_processing = settings.no_self_processing;
  out.problem.tasks = placement::DemandsFromDrr(settings.workload_mips, settings.drr,
                                                settings.tasks, topo.MobileIndices());
  out.solution = placement::Solve(out.problem, settings.solve);
  out.cell = {settings.drr, settings.workload_mips,
              placement::MakePowerReport(out.problem, out.solution),
              placement::MakeUtilizationReport(out.problem, out.solution), "ok"};
  return out;
}

void WritePlacement(Bundle& b, const PlacementOutcome& p, const RunOptions& opts,
                    json& summary) {
  const auto& t = p.problem.topology;
  Csv table(PlacementHeader(t));
  table.Row(PlacementRow(p.cell.drr, p.cell.workload, p.cell.power, p.cell.status));
  b.Write("placement.csv", table.str());
  Csv tasks({"task", "source", "workload_mips", "flow_mbps", "node", "processing_w",
             "networking_w"});
  for (size_t k = 0; k < p.problem.tasks.size(); ++k) {
    const auto& task = p.problem.tasks[k];
    const int n = p.solution.node_of_task[k];
    tasks.Row({std::to_string(task.id), t.nodes[task.source].id, Num(task.workload_mips),
               Num(task.flow_mbps), t.nodes[n].id,
               Num(task.workload_mips * t.nodes[n].efficiency_w_per_mips),
               Num(task.flow_mbps * t.routes[n].efficiency_w_per_mbps)});
  }
  b.Write("placement_tasks.csv", tasks.str());
  Csv util({"mobile_id", "wavelength", "utilization"});
  for (const auto& u : p.cell.utilization) {
    util.Row({u.id, std::string(WavelengthName(u.wavelength)), Num(u.utilization)});
  }
  b.Write("utilization.csv", util.str());
  b.Write("topology.json", topology::ToJson(t).dump(2) + "\n");
  if (!opts.fig.empty()) {
    b.Write("placement_fig" + opts.fig + ".csv", FigureCsv(opts.fig, t, {p.cell}));
  }
  summary["total_power_w"] = p.cell.power.total_w;
  summary["processing_power_w"] = p.cell.power.processing_w;
  summary["networking_power_w"] = p.cell.power.networking_w;
  summary["search_nodes"] = p.solution.stats.nodes;
  json placed = json::object();
  for (const auto& n : p.cell.power.nodes) {
    if (n.workload_mips > 0.0) placed[n.id] = n.workload_mips;
  }
  summary["workload_by_node"] = placed;
}

topology::TopologyConfig IdealTopology(const json& cfg) {
  topology::TopologyConfig t =
      topology::BuildReferenceTopology(topology::IdealMobiles(), config::Topology(cfg));
  t.Validate();
  return t;
}

std::string DeviceFor(const std::string& hop) {
  if (hop.rfind("ONU", 0) == 0) return "ONU";
  const size_t dash = hop.find('-');
  return dash == std::string::npos ? hop : hop.substr(0, dash);
}

}  // namespace

bool IsFigure(std::string_view fig) {
  for (auto f : kFigures) {
    if (f == fig) return true;
  }
  return false;
}

StageResult RunChannel(const json& cfg, const RunOptions& opts) {
  const channel::RoomConfig room = config::Room(cfg);
  const channel::ReceiverSpec rx = config::Receiver(cfg);
  const auto records = channel::CharacterizeLocations(room, rx, room.user_grid,
                                                      config::MaxReflectionOrder(cfg));
  const auto bandwidths =
      scenario::LocationBandwidths(records, room.user_grid.size(), room.access_points.size());
  Csv cdf({"bandwidth_hz", "fraction"});
  for (const auto& p : scenario::BandwidthCdf(bandwidths)) {
    cdf.Row({Num(p.bandwidth_hz), Num(p.fraction)});
  }
  Bundle b(opts, "channel", cfg);
  b.Write("channel.csv", ChannelCsv(records));
  b.Write("cdf.csv", cdf.str());
  json summary;
  summary["locations"] = room.user_grid.size();
  summary["fraction_bw_at_least_4ghz"] = scenario::FractionAtLeast(bandwidths, 4e9);
  return b.Finish(summary);
}

StageResult RunAllocate(const json& cfg, const RunOptions& opts) {
  const AllocationOutcome a = Allocate(cfg);
  Bundle b(opts, "allocate", cfg);
  json summary;
  WriteAllocation(b, a, summary);
  return b.Finish(summary);
}

StageResult RunPlace(const json& cfg, const RunOptions& opts) {
  CheckFigure(opts);
  const PlacementOutcome p = Place(cfg, IdealTopology(cfg));
  Bundle b(opts, "place", cfg);
  json summary;
  WritePlacement(b, p, opts, summary);
  return b.Finish(summary);
}

StageResult RunSweep(const json& cfg, const RunOptions& opts) {
  CheckFigure(opts);
  const topology::TopologyConfig topo = IdealTopology(cfg);
  const auto settings = config::Placement(cfg);
  const auto rows = placement::Sweep(topo, config::Sweep(cfg), settings.solve,
                                     settings.no_self_processing);
  Csv table(PlacementHeader(topo));
  Csv util({"drr", "workload_mips", "mobile_id", "wavelength", "utilization"});
  std::vector<Cell> cells;
  int infeasible = 0;
  for (const auto& r : rows) {
    const std::string status = r.feasible ? "ok" : "infeasible:" + r.infeasible_constraint;
    infeasible += r.feasible ? 0 : 1;
    table.Row(PlacementRow(r.drr, r.workload_mips, r.power, status));
    for (const auto& u : r.utilization) {
      util.Row({Num(r.drr), Num(r.workload_mips), u.id,
                std::string(WavelengthName(u.wavelength)), Num(u.utilization)});
    }
    cells.push_back({r.drr, r.workload_mips, r.power, r.utilization, status});
  }
  Bundle b(opts, "sweep", cfg);
  b.Write("sweep.csv", table.str());
  b.Write("sweep_utilization.csv", util.str());
  if (!opts.fig.empty()) {
    b.Write("sweep_fig" + opts.fig + ".csv", FigureCsv(opts.fig, topo, cells));
  }
  json summary;
  summary["cells"] = rows.size();
  summary["infeasible_cells"] = infeasible;
  return b.Finish(summary);
}

StageResult RunChain(const json& cfg, const RunOptions& opts) {
  CheckFigure(opts);
  const AllocationOutcome a = Allocate(cfg);
  Bundle b(opts, "chain", cfg);
  json summary;
  WriteAllocation(b, a, summary);
  if (!a.solution) {
    Csv empty(PlacementHeader(topology::BuildReferenceTopology({}, config::Topology(cfg))));
    b.Write("placement.csv", empty.str());
    b.Write("utilization.csv", Csv({"mobile_id", "wavelength", "utilization"}).str());
    return b.Finish(summary);
  }
  std::vector<topology::MobileLink> mobiles;
  for (size_t u = 0; u < a.solution->links.size(); ++u) {
    mobiles.push_back({a.solution->links[u].wavelength, a.solution->rate_bps[u],
                       a.room.access_points[a.solution->links[u].ap].id});
  }
  const topology::TopologyConfig topo =
      topology::BuildReferenceTopology(mobiles, config::Topology(cfg));
  topo.Validate();
  PlacementOutcome p;
  try {
    p = Place(cfg, topo);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(e.constraint(), std::string("placement stage: ") + e.what());
  }
  WritePlacement(b, p, opts, summary);
  return b.Finish(summary);
}

StageResult RunValidate(const json& cfg, const RunOptions& opts) {
  config::Room(cfg);
  config::Receiver(cfg);
  config::Allocation(cfg);
  config::Placement(cfg);
  config::Sweep(cfg);
  const topology::TopologyConfig topo = IdealTopology(cfg);
  const std::vector<std::string> failures = topology::CheckOrderings(topo);
  json report;
  report["orderings_ok"] = failures.empty();
  report["failures"] = failures;
  json routes = json::array();
  for (size_t i = 0; i < topo.nodes.size(); ++i) {
    const auto& r = topo.routes[i];
    std::vector<topology::NetworkDevice> chain;
    std::vector<std::string> names;
    for (size_t h = 0; h + 1 < r.hops.size(); ++h) {
      const std::string dev = DeviceFor(r.hops[h]);
      for (const auto& d : topo.devices) {
        if (d.name == dev) {
          chain.push_back(d);
          names.push_back(dev);
        }
      }
    }
    routes.push_back({{"node", topo.nodes[i].id},
                      {"route_efficiency_w_per_mbps", r.efficiency_w_per_mbps},
                      {"route_capacity_mbps", r.capacity_mbps},
                      {"device_chain", names},
                      {"device_chain_w_per_mbps", topology::DeriveRouteEfficiency(chain)}});
  }
  report["routes"] = routes;
  Bundle b(opts, "validate", cfg);
  b.Write("validate.json", report.dump(2) + "\n");
  b.Write("topology.json", topology::ToJson(topo).dump(2) + "\n");
  if (!failures.empty()) {
    std::string msg = "topology ordering checks failed:";
    for (const auto& f : failures) msg += " " + f + ";";
    b.Finish(report);
    throw Error(ErrorKind::kConfig, msg);
  }
  return b.Finish(report);
}

StageResult Run(std::string_view stage, const json& cfg, const RunOptions& opts) {
  try {
    if (stage == "channel") return RunChannel(cfg, opts);
    if (stage == "allocate") return RunAllocate(cfg, opts);
    if (stage == "place") return RunPlace(cfg, opts);
    if (stage == "sweep") return RunSweep(cfg, opts);
    if (stage == "chain") return RunChain(cfg, opts);
    if (stage == "validate") return RunValidate(cfg, opts);
  } catch (const InfeasibleError& e) {
    json report = {{"status", "infeasible"},
                   {"stage", std::string(stage)},
                   {"constraint", e.constraint()},
                   {"message", e.what()}};
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    std::ofstream(fs::path(opts.out_dir) / "infeasible.json") << report.dump(2) << "\n";
    throw;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown stage '" + std::string(stage) + "'");
}

}  // namespace owcfog::pipeline
