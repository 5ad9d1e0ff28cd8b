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

#include "owcfog/placement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace owcfog::placement {

using topology::NodeKind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;

double Slack(double v) { return kRelTol * std::max(1.0, std::abs(v)); }

std::string Fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<TaskDemand> DemandsFromDrr(double workload_mips, double drr, int count,
                                       const std::vector<int>& sources,
                                       std::vector<std::string>* warnings) {
  if (count <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "task count must be positive");
  }
  if (!(drr > 0.0 && drr <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "DRR must lie in (0, 1]");
  }
  if (!(workload_mips > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "workload must be positive");
  }
  if (sources.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no mobile units to source tasks");
  }
  if (warnings && (workload_mips < 100.0 || workload_mips > 1500.0)) {
    warnings->push_back("workload " + Fmt(workload_mips) +
                        " MIPS is outside the 100-1500 MIPS study range");
  }
  std::vector<TaskDemand> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    out.push_back({k, sources[static_cast<size_t>(k) % sources.size()],
                   workload_mips, drr * workload_mips});
  }
  return out;
}

double PlacementProblem::Alpha() const {
  if (alpha > 0.0) return alpha;
  double w = 0.0;
  for (const auto& t : tasks) w = std::max(w, t.workload_mips);
  return 10.0 * std::max(w, 1.0);
}

bool PlacementProblem::Allowed(const TaskDemand& task, int node) const {
  return !(no_self_processing && node == task.source);
}

void PlacementProblem::Validate() const {
  topology.Validate();
  double w_max = 0.0;
  for (const auto& t : tasks) {
    if (!(t.workload_mips > 0.0) || !(t.flow_mbps >= 0.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "task " + std::to_string(t.id) +
                      " needs a positive workload and a non-negative flow");
    }
    if (t.source < 0 || t.source >= static_cast<int>(topology.nodes.size()) ||
        topology.nodes[t.source].kind != NodeKind::kMobile) {
      throw Error(ErrorKind::kInvalidArgument,
                  "task " + std::to_string(t.id) + " must originate at a mobile unit");
    }
    w_max = std::max(w_max, t.workload_mips);
  }
  if (!(Alpha() > w_max)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha must exceed every workload");
  }
}

double PlacementCost(const PlacementProblem& problem, const TaskDemand& task,
                     int node) {
  return task.workload_mips * problem.topology.nodes[node].efficiency_w_per_mips +
         task.flow_mbps * problem.topology.routes[node].efficiency_w_per_mbps;
}

std::vector<int> PreferenceRanks(const topology::TopologyConfig& t) {
  auto tier = [](NodeKind k) {
    switch (k) {
      case NodeKind::kRoomFog:
        return 0;
      case NodeKind::kMobile:
        return 1;
      case NodeKind::kBuildFog:
        return 2;
      case NodeKind::kCampFog:
        return 3;
      case NodeKind::kMetroFog:
        return 4;
      case NodeKind::kCCloud:
        return 5;
    }
    return 6;
  };
  std::vector<int> order(t.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int ta = tier(t.nodes[a].kind), tb = tier(t.nodes[b].kind);
    if (ta != tb) return ta < tb;
    if (ta == 1) {
      const double pa = t.routes[a].efficiency_w_per_mbps;
      const double pb = t.routes[b].efficiency_w_per_mbps;
      if (pa != pb) return pa < pb;
    }
    return a < b;
  });
  std::vector<int> rank(t.nodes.size());
  for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  return rank;
}

PlacementSolution Evaluate(const PlacementProblem& problem,
                           std::vector<int> node_of_task) {
  const auto& t = problem.topology;
  const size_t N = t.nodes.size();
  PlacementSolution s;
  s.node_of_task = std::move(node_of_task);
  s.processing_w.assign(N, 0.0);
  s.networking_w.assign(N, 0.0);
  s.workload_mips.assign(N, 0.0);
  s.link_flow_mbps.assign(t.links.size(), 0.0);
  for (size_t k = 0; k < problem.tasks.size(); ++k) {
    const TaskDemand& task = problem.tasks[k];
    const int n = s.node_of_task[k];
    s.workload_mips[n] += task.workload_mips;
    s.processing_w[n] += task.workload_mips * t.nodes[n].efficiency_w_per_mips;
    s.networking_w[n] += task.flow_mbps * t.routes[n].efficiency_w_per_mbps;
    for (int li : t.routes[n].links) s.link_flow_mbps[li] += task.flow_mbps;
  }
  for (size_t n = 0; n < N; ++n) {
    s.processing_total_w += s.processing_w[n];
    s.networking_total_w += s.networking_w[n];
  }
  s.objective = s.processing_total_w + s.networking_total_w;
  return s;
}

namespace {

// Successive shortest paths on a small dense graph; costs may be fractional.
class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : n_(n), adj_(static_cast<size_t>(n)) {}

  void AddArc(int from, int to, double cap, double cost) {
    if (!(cap > 0.0)) return;
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap, cost});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0.0, -cost});
  }

  // Returns {flow, cost} of a min-cost flow of at most `limit` units.
  std::pair<double, double> Run(int s, int t, double limit) {
    double flow = 0.0, cost = 0.0;
    std::vector<double> dist(static_cast<size_t>(n_));
    std::vector<int> via(static_cast<size_t>(n_));
    std::vector<char> queued(static_cast<size_t>(n_));
    const double eps = 1e-12 * std::max(1.0, limit);
    while (flow < limit - eps) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      dist[s] = 0.0;
      std::vector<int> queue{s};
      queued.assign(queued.size(), 0);
      queued[s] = 1;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        const int u = queue[qi];
        queued[u] = 0;
        for (int ai : adj_[u]) {
          const Arc& a = arcs_[ai];
          if (a.cap <= eps) continue;
          const double nd = dist[u] + a.cost;
          if (nd < dist[a.to] - 1e-15) {
            dist[a.to] = nd;
            via[a.to] = ai;
            if (!queued[a.to]) {
              queued[a.to] = 1;
              queue.push_back(a.to);
            }
          }
        }
      }
      if (via[t] < 0) break;
      double push = limit - flow;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        push = std::min(push, arcs_[via[v]].cap);
      }
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      flow += push;
      cost += push * dist[t];
    }
    return {flow, cost};
  }

 private:
  struct Arc {
    int to;
    double cap;
    double cost;
  };
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

class PlacementSearch {
 public:
  PlacementSearch(const PlacementProblem& p, double time_limit_s, bool use_links)
      : p_(p),
        t_(p.topology),
        K_(static_cast<int>(p.tasks.size())),
        N_(static_cast<int>(p.topology.nodes.size())),
        use_links_(use_links),
        time_limit_s_(time_limit_s),
        start_(std::chrono::steady_clock::now()),
        rank_(PreferenceRanks(p.topology)) {
    order_.resize(static_cast<size_t>(K_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      const TaskDemand& x = p_.tasks[a];
      const TaskDemand& y = p_.tasks[b];
      if (x.workload_mips != y.workload_mips) return x.workload_mips > y.workload_mips;
      if (x.flow_mbps != y.flow_mbps) return x.flow_mbps > y.flow_mbps;
      return x.source < y.source;
    });
    group_start_.assign(static_cast<size_t>(K_), 0);
    for (int i = 1; i < K_; ++i) {
      group_start_[i] = SameClass(order_[i], order_[i - 1]) ? group_start_[i - 1] : i;
    }
    same_w_.assign(static_cast<size_t>(K_) + 1, 1);
    same_wf_.assign(static_cast<size_t>(K_) + 1, 1);
    for (int i = K_ - 2; i >= 0; --i) {
      const TaskDemand& x = p_.tasks[order_[i]];
      const TaskDemand& y = p_.tasks[order_[i + 1]];
      same_w_[i] = same_w_[i + 1] && x.workload_mips == y.workload_mips;
      same_wf_[i] = same_wf_[i + 1] && x.workload_mips == y.workload_mips &&
                    x.flow_mbps == y.flow_mbps;
    }
    cost_.assign(static_cast<size_t>(K_) * N_, 0.0);
    for (int k = 0; k < K_; ++k) {
      for (int n = 0; n < N_; ++n) cost_[k * N_ + n] = PlacementCost(p_, p_.tasks[k], n);
    }
    res_node_.resize(static_cast<size_t>(N_));
    for (int n = 0; n < N_; ++n) res_node_[n] = t_.nodes[n].capacity_mips;
    res_link_.resize(t_.links.size());
    for (size_t e = 0; e < t_.links.size(); ++e) {
      res_link_[e] = use_links_ ? t_.links[e].capacity_mbps : kInf;
    }
    assign_.assign(static_cast<size_t>(K_), -1);
  }

  void Run() {
    root_bound_ = Bound(0);
    if (root_bound_ < kInf) Dfs(0, 0.0);
  }

  bool found() const { return !best_assign_.empty(); }
  const std::vector<int>& best_assign() const { return best_assign_; }
  double best() const { return best_; }
  double root_bound() const { return root_bound_; }
  long long nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  bool SameClass(int a, int b) const {
    const TaskDemand& x = p_.tasks[a];
    const TaskDemand& y = p_.tasks[b];
    return x.workload_mips == y.workload_mips && x.flow_mbps == y.flow_mbps &&
           x.source == y.source;
  }

  double RouteResidual(int n) const {
    double r = kInf;
    for (int li : t_.routes[n].links) r = std::min(r, res_link_[li]);
    return r;
  }

  bool Fits(int k, int n) const {
    const TaskDemand& task = p_.tasks[k];
    if (!p_.Allowed(task, n)) return false;
    if (task.workload_mips > res_node_[n] + Slack(res_node_[n])) return false;
    const double route = RouteResidual(n);
    return task.flow_mbps <= route + Slack(route);
  }

  // Copies of `per` that fit within `residual`, floored.
  static double Copies(double residual, double per) {
    if (per <= 0.0) return kInf;
    return std::floor((residual + Slack(residual)) / per);
  }

  // Cheapest completion for tasks order_[pos..]: a min-cost flow in MIPS from
  // task classes to nodes, ignoring links shared between routes. +inf when
  // even the relaxation cannot place everything.
  double Bound(int pos) const {
    if (pos >= K_) return 0.0;
    struct Class {
      double w, f;
      int source;
      int count;
    };
    std::vector<Class> classes;
    std::map<std::tuple<double, double, int>, int> index;
    double total = 0.0;
    for (int i = pos; i < K_; ++i) {
      const TaskDemand& task = p_.tasks[order_[i]];
      const auto key = std::make_tuple(task.workload_mips, task.flow_mbps, task.source);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, static_cast<int>(classes.size()));
        classes.push_back({task.workload_mips, task.flow_mbps, task.source, 1});
      } else {
        ++classes[it->second].count;
      }
      total += task.workload_mips;
    }
    const int C = static_cast<int>(classes.size());
    const int src = 0, sink = 1 + C + N_;
    MinCostFlow g(sink + 1);
    for (int c = 0; c < C; ++c) {
      g.AddArc(src, 1 + c, classes[c].count * classes[c].w, 0.0);
    }
    const double w0 = classes[0].w, f0 = classes[0].f;
    for (int n = 0; n < N_; ++n) {
      const double route = RouteResidual(n);
      for (int c = 0; c < C; ++c) {
        const Class& cl = classes[c];
        if (p_.no_self_processing && cl.source == n) continue;
        const double copies = std::min({static_cast<double>(cl.count),
                                        Copies(res_node_[n], cl.w),
                                        Copies(route, cl.f)});
        if (copies <= 0.0) continue;
        const double unit = (cl.w * t_.nodes[n].efficiency_w_per_mips +
                             cl.f * t_.routes[n].efficiency_w_per_mbps) /
                            cl.w;
        g.AddArc(1 + c, 1 + C + n, copies * cl.w, unit);
      }
      double cap = res_node_[n];
      if (same_w_[pos]) {
        double copies = Copies(res_node_[n], w0);
        if (same_wf_[pos]) copies = std::min(copies, Copies(route, f0));
        cap = std::min(cap + Slack(cap), copies * w0);
      }
      g.AddArc(1 + C + n, sink, cap, 0.0);
    }
    const auto [flow, cost] = g.Run(src, sink, total);
    if (flow < total - Slack(total)) return kInf;
    return cost;
  }

  void Apply(int k, int n, double sign) {
    const TaskDemand& task = p_.tasks[k];
    res_node_[n] -= sign * task.workload_mips;
    for (int li : t_.routes[n].links) res_link_[li] -= sign * task.flow_mbps;
    assign_[k] = sign > 0.0 ? n : -1;
  }

  bool Prunable(double bound) const {
    return found() && bound >= best_ - Slack(best_);
  }

  void Dfs(int pos, double cost_so_far) {
    ++nodes_;
    if ((nodes_ & 255) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count() > time_limit_s_) {
      timed_out_ = true;
    }
    if (timed_out_) return;
    if (pos == K_) {
      if (!found() || cost_so_far < best_ - Slack(best_)) {
        best_ = cost_so_far;
        best_assign_ = assign_;
      }
      return;
    }
    const int k = order_[pos];
    const int gs = group_start_[pos];
    const int floor_rank = gs < pos ? rank_[assign_[order_[pos - 1]]] : -1;

    struct Child {
      int node;
      double bound;
    };
    std::vector<Child> children;
    for (int n = 0; n < N_; ++n) {
      if (rank_[n] < floor_rank || !Fits(k, n)) continue;
      Apply(k, n, 1.0);
      const double b = cost_so_far + cost_[k * N_ + n] + Bound(pos + 1);
      Apply(k, n, -1.0);
      if (b < kInf && !Prunable(b)) children.push_back({n, b});
    }
    if (children.empty()) return;
    double lowest = kInf;
    for (const Child& c : children) lowest = std::min(lowest, c.bound);
    // Children tied with the lowest bound go first in preference order.
    std::stable_sort(children.begin(), children.end(), [&](const Child& a, const Child& b) {
      const bool ta = a.bound <= lowest + Slack(lowest);
      const bool tb = b.bound <= lowest + Slack(lowest);
      if (ta != tb) return ta;
      if (!ta && a.bound != b.bound) return a.bound < b.bound;
      return rank_[a.node] < rank_[b.node];
    });
    for (const Child& c : children) {
      if (Prunable(c.bound)) continue;
      Apply(k, c.node, 1.0);
      Dfs(pos + 1, cost_so_far + cost_[k * N_ + c.node]);
      Apply(k, c.node, -1.0);
      if (timed_out_) return;
    }
  }

  const PlacementProblem& p_;
  const topology::TopologyConfig& t_;
  const int K_;
  const int N_;
  const bool use_links_;
  const double time_limit_s_;
  const std::chrono::steady_clock::time_point start_;
  const std::vector<int> rank_;
  std::vector<int> order_;
  std::vector<int> group_start_;
  std::vector<char> same_w_;
  std::vector<char> same_wf_;
  std::vector<double> cost_;
  std::vector<double> res_node_;
  std::vector<double> res_link_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  double best_ = kInf;
  double root_bound_ = kInf;
  long long nodes_ = 0;
  bool timed_out_ = false;
};

void CheckEachTaskPlaceable(const PlacementProblem& p) {
  const auto& t = p.topology;
  double total = 0.0, capacity = 0.0;
  for (const auto& n : t.nodes) capacity += n.capacity_mips;
  for (const TaskDemand& task : p.tasks) {
    total += task.workload_mips;
    bool any_node = false, any_route = false;
    for (size_t n = 0; n < t.nodes.size(); ++n) {
      if (!p.Allowed(task, static_cast<int>(n))) continue;
      if (task.workload_mips > t.nodes[n].capacity_mips + Slack(t.nodes[n].capacity_mips)) {
        continue;
      }
      any_node = true;
      if (task.flow_mbps <= t.routes[n].capacity_mbps + Slack(t.routes[n].capacity_mbps)) {
        any_route = true;
      }
    }
    if (!any_node) {
      throw InfeasibleError("node_capacity",
                            "task " + std::to_string(task.id) + " (" +
                                Fmt(task.workload_mips) +
                                " MIPS) fits no permitted processing node");
    }
    if (!any_route) {
      throw InfeasibleError("link_capacity",
                            "task " + std::to_string(task.id) + " flow " +
                                Fmt(task.flow_mbps) +
                                " Mbit/s exceeds every permitted route capacity");
    }
  }
  if (total > capacity + Slack(capacity)) {
    throw InfeasibleError("node_capacity", "total workload " + Fmt(total) +
                                               " MIPS exceeds total capacity " +
                                               Fmt(capacity) + " MIPS");
  }
}

[[noreturn]] void ReportJointInfeasibility(const PlacementProblem& p,
                                           double time_limit_s) {
  PlacementSearch relaxed(p, time_limit_s, /*use_links=*/false);
  relaxed.Run();
  if (relaxed.found()) {
    throw InfeasibleError("link_capacity",
                          "node capacities admit a placement but link "
                          "capacities do not");
  }
  throw InfeasibleError("node_capacity",
                        "no placement respects every node capacity");
}

bool CapacitiesHold(const PlacementProblem& p, const PlacementSolution& s) {
  const auto& t = p.topology;
  for (size_t n = 0; n < t.nodes.size(); ++n) {
    if (s.workload_mips[n] > t.nodes[n].capacity_mips + Slack(t.nodes[n].capacity_mips)) {
      return false;
    }
  }
  for (size_t e = 0; e < t.links.size(); ++e) {
    if (s.link_flow_mbps[e] > t.links[e].capacity_mbps + Slack(t.links[e].capacity_mbps)) {
      return false;
    }
  }
  return true;
}

PlacementSolution SolveExhaustive(const PlacementProblem& p, double cap) {
  const int K = static_cast<int>(p.tasks.size());
  const int N = static_cast<int>(p.topology.nodes.size());
  const std::vector<int> rank = PreferenceRanks(p.topology);
  const double size = std::pow(static_cast<double>(N), K);
  if (size > cap) {
    // Without binding capacities every task independently takes its cheapest
    // node, which is then exact.
    std::vector<int> pick(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
      int best = -1;
      for (int n = 0; n < N; ++n) {
        if (!p.Allowed(p.tasks[k], n)) continue;
        const double c = PlacementCost(p, p.tasks[k], n);
        if (best < 0) {
          best = n;
          continue;
        }
        const double b = PlacementCost(p, p.tasks[k], best);
        if (c < b - Slack(b) || (std::abs(c - b) <= Slack(b) && rank[n] < rank[best])) {
          best = n;
        }
      }
      pick[k] = best;
    }
    PlacementSolution s = Evaluate(p, pick);
    if (!CapacitiesHold(p, s)) {
      throw Error(ErrorKind::kResource,
                  "exhaustive placement needs " + Fmt(size) + " candidates (cap " +
                      Fmt(cap) + ") and capacities bind at the per-task optimum");
    }
    s.stats.nodes = K;
    return s;
  }

  std::vector<int> pick(static_cast<size_t>(K), -1), best_pick;
  std::vector<double> res_node(static_cast<size_t>(N));
  std::vector<double> res_link(p.topology.links.size());
  for (int n = 0; n < N; ++n) res_node[n] = p.topology.nodes[n].capacity_mips;
  for (size_t e = 0; e < res_link.size(); ++e) {
    res_link[e] = p.topology.links[e].capacity_mbps;
  }
  double best = kInf;
  long long leaves = 0;
  auto rank_less = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (rank[a[i]] != rank[b[i]]) return rank[a[i]] < rank[b[i]];
    }
    return false;
  };
  auto visit = [&](auto&& self, int k, double cost) -> void {
    if (k == K) {
      ++leaves;
      if (best_pick.empty() || cost < best - Slack(best) ||
          (std::abs(cost - best) <= Slack(best) && rank_less(pick, best_pick))) {
        best = cost;
        best_pick = pick;
      }
      return;
    }
    const TaskDemand& task = p.tasks[k];
    for (int n = 0; n < N; ++n) {
      if (!p.Allowed(task, n)) continue;
      if (task.workload_mips > res_node[n] + Slack(res_node[n])) continue;
      const auto& links = p.topology.routes[n].links;
      bool ok = true;
      for (int li : links) ok = ok && task.flow_mbps <= res_link[li] + Slack(res_link[li]);
      if (!ok) continue;
      res_node[n] -= task.workload_mips;
      for (int li : links) res_link[li] -= task.flow_mbps;
      pick[k] = n;
      self(self, k + 1, cost + PlacementCost(p, task, n));
      res_node[n] += task.workload_mips;
      for (int li : links) res_link[li] += task.flow_mbps;
    }
  };
  visit(visit, 0, 0.0);
  if (best_pick.empty()) ReportJointInfeasibility(p, kInf);
  PlacementSolution s = Evaluate(p, best_pick);
  s.stats.nodes = leaves;
  return s;
}

}  // namespace

PlacementSolution Solve(const PlacementProblem& problem, const SolveOptions& options) {
  problem.Validate();
  const auto start = std::chrono::steady_clock::now();
  if (problem.tasks.empty()) {
    return Evaluate(problem, {});
  }
  CheckEachTaskPlaceable(problem);
  PlacementSolution s;
  if (options.method == Method::kExhaustive) {
    s = SolveExhaustive(problem, options.exhaustive_cap);
  } else {
    PlacementSearch search(problem, options.time_limit_s, /*use_links=*/true);
    search.Run();
    if (!search.found()) {
      if (search.timed_out()) {
        throw Error(ErrorKind::kResource,
                    "time limit reached before any feasible placement");
      }
      ReportJointInfeasibility(problem, options.time_limit_s);
    }
    s = Evaluate(problem, search.best_assign());
    s.stats.nodes = search.nodes();
    s.stats.optimal = !search.timed_out();
    s.stats.gap = s.stats.optimal
                      ? 0.0
                      : std::max(0.0, (s.objective - search.root_bound()) /
                                          std::max(s.objective, 1e-300));
  }
  s.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

PlacementModel::PlacementModel(const PlacementProblem& problem) : problem_(problem) {
  problem_.Validate();
  const auto& t = problem_.topology;
  const int K = static_cast<int>(problem_.tasks.size());
  n_nodes_ = static_cast<int>(t.nodes.size());
  n_links_ = static_cast<int>(t.links.size());
  const int N = n_nodes_, E = n_links_;
  const double alpha = problem_.Alpha();

  delta0_ = static_cast<int>(rows_.num_vars());
  for (int i = 0; i < K * N; ++i) rows_.AddVar(0.0, 1.0, true);
  x0_ = static_cast<int>(rows_.num_vars());
  for (int i = 0; i < K * N; ++i) rows_.AddVar(0.0, kInf, false);
  l0_ = static_cast<int>(rows_.num_vars());
  for (int i = 0; i < K * N; ++i) rows_.AddVar(0.0, kInf, false);
  lambda0_ = static_cast<int>(rows_.num_vars());
  for (int i = 0; i < K * N * E; ++i) rows_.AddVar(0.0, kInf, false);
  p0_ = static_cast<int>(rows_.num_vars());
  for (int n = 0; n < N; ++n) rows_.AddVar(0.0, kInf, false);
  q0_ = static_cast<int>(rows_.num_vars());
  for (int n = 0; n < N; ++n) rows_.AddVar(0.0, kInf, false);

  for (int n = 0; n < N; ++n) {
    objective_.push_back({ProcessingPower(n), 1.0});
    objective_.push_back({NetworkingPower(n), 1.0});
  }
  auto tag = [](const char* family, std::initializer_list<int> idx) {
    std::string s = std::string(family) + "[";
    bool first = true;
    for (int i : idx) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "]";
  };

  for (int n = 0; n < N; ++n) {
    linear::Constraint proc{tag("processing_power", {n}), {{ProcessingPower(n), 1.0}},
                            linear::Sense::kEqual, 0.0};
    linear::Constraint net{tag("networking_power", {n}), {{NetworkingPower(n), 1.0}},
                           linear::Sense::kEqual, 0.0};
    linear::Constraint cap{tag("node_capacity", {n}), {}, linear::Sense::kLessEqual,
                           t.nodes[n].capacity_mips};
    for (int k = 0; k < K; ++k) {
      const TaskDemand& task = problem_.tasks[k];
      proc.terms.push_back({Workload(k, n), -t.nodes[n].efficiency_w_per_mips});
      net.terms.push_back(
          {Delta(k, n), -task.flow_mbps * t.routes[n].efficiency_w_per_mbps});
      cap.terms.push_back({Workload(k, n), 1.0});
    }
    rows_.AddRow(std::move(proc));
    rows_.AddRow(std::move(net));
    rows_.AddRow(std::move(cap));
  }

  // Vertices of the link graph; the OLT is the source of every task flow.
  std::vector<std::string> vertices;
  auto vertex = [&](const std::string& name) {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it != vertices.end()) return static_cast<int>(it - vertices.begin());
    vertices.push_back(name);
    return static_cast<int>(vertices.size()) - 1;
  };
  const int olt = vertex("OLT");
  std::vector<std::pair<int, int>> ends;
  for (const auto& l : t.links) ends.push_back({vertex(l.from), vertex(l.to)});
  std::vector<int> node_vertex(static_cast<size_t>(N));
  for (int n = 0; n < N; ++n) node_vertex[n] = vertex(t.nodes[n].id);

  for (int k = 0; k < K; ++k) {
    const TaskDemand& task = problem_.tasks[k];
    linear::Constraint one{tag("one_node", {k}), {}, linear::Sense::kEqual, 1.0};
    linear::Constraint work{tag("workload", {k}), {}, linear::Sense::kEqual,
                            task.workload_mips};
    for (int n = 0; n < N; ++n) {
      one.terms.push_back({Delta(k, n), 1.0});
      work.terms.push_back({Workload(k, n), 1.0});
      rows_.AddRow({tag("x_lower", {k, n}), {{Workload(k, n), alpha}, {Delta(k, n), -1.0}},
                    linear::Sense::kGreaterEqual, 0.0});
      rows_.AddRow({tag("x_upper", {k, n}), {{Workload(k, n), 1.0}, {Delta(k, n), -alpha}},
                    linear::Sense::kLessEqual, 0.0});
      rows_.AddRow({tag("route_flow", {k, n}),
                    {{TaskFlow(k, n), 1.0}, {Delta(k, n), -task.flow_mbps}},
                    linear::Sense::kEqual, 0.0});
      for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
        linear::Constraint bal{tag("flow_balance", {k, n, v}), {}, linear::Sense::kEqual,
                               0.0};
        for (int e = 0; e < E; ++e) {
          if (ends[e].first == v) bal.terms.push_back({LinkFlow(k, n, e), 1.0});
          if (ends[e].second == v) bal.terms.push_back({LinkFlow(k, n, e), -1.0});
        }
        if (v == olt) bal.terms.push_back({TaskFlow(k, n), -1.0});
        if (v == node_vertex[n]) bal.terms.push_back({TaskFlow(k, n), 1.0});
        if (!bal.terms.empty()) rows_.AddRow(std::move(bal));
      }
    }
    rows_.AddRow(std::move(one));
    rows_.AddRow(std::move(work));
    if (problem_.no_self_processing) {
      rows_.AddRow({tag("no_self", {k}), {{Delta(k, task.source), 1.0}},
                    linear::Sense::kEqual, 0.0});
    }
  }
  for (int e = 0; e < E; ++e) {
    linear::Constraint cap{tag("link_capacity", {e}), {}, linear::Sense::kLessEqual,
                           t.links[e].capacity_mbps};
    for (int k = 0; k < K; ++k) {
      for (int n = 0; n < N; ++n) cap.terms.push_back({LinkFlow(k, n, e), 1.0});
    }
    rows_.AddRow(std::move(cap));
  }
}

int PlacementModel::Delta(int k, int n) const { return delta0_ + k * n_nodes_ + n; }
int PlacementModel::Workload(int k, int n) const { return x0_ + k * n_nodes_ + n; }
int PlacementModel::TaskFlow(int k, int d) const { return l0_ + k * n_nodes_ + d; }
int PlacementModel::LinkFlow(int k, int d, int link) const {
  return lambda0_ + (k * n_nodes_ + d) * n_links_ + link;
}
int PlacementModel::ProcessingPower(int n) const { return p0_ + n; }
int PlacementModel::NetworkingPower(int n) const { return q0_ + n; }

std::vector<double> PlacementModel::PointFor(const std::vector<int>& node_of_task) const {
  const auto& t = problem_.topology;
  std::vector<double> x(rows_.num_vars(), 0.0);
  for (size_t k = 0; k < node_of_task.size(); ++k) {
    const int kk = static_cast<int>(k);
    const int n = node_of_task[k];
    const TaskDemand& task = problem_.tasks[k];
    x[Delta(kk, n)] = 1.0;
    x[Workload(kk, n)] = task.workload_mips;
    x[TaskFlow(kk, n)] = task.flow_mbps;
    for (int li : t.routes[n].links) x[LinkFlow(kk, n, li)] = task.flow_mbps;
    x[ProcessingPower(n)] += task.workload_mips * t.nodes[n].efficiency_w_per_mips;
    x[NetworkingPower(n)] += task.flow_mbps * t.routes[n].efficiency_w_per_mbps;
  }
  return x;
}

PowerReport MakePowerReport(const PlacementProblem& problem,
                            const PlacementSolution& solution) {
  PowerReport r;
  const auto& t = problem.topology;
  for (size_t n = 0; n < t.nodes.size(); ++n) {
    NodePower np;
    np.id = t.nodes[n].id;
    np.kind = t.nodes[n].kind;
    if (!solution.processing_w.empty()) {
      np.workload_mips = solution.workload_mips[n];
      np.processing_w = solution.processing_w[n];
      np.networking_w = solution.networking_w[n];
    }
    r.processing_w += np.processing_w;
    r.networking_w += np.networking_w;
    r.nodes.push_back(np);
  }
  r.total_w = r.processing_w + r.networking_w;
  return r;
}

std::vector<MobileUtilization> MakeUtilizationReport(
    const PlacementProblem& problem, const PlacementSolution& solution) {
  std::vector<MobileUtilization> out;
  const auto& t = problem.topology;
  for (int n : t.MobileIndices()) {
    const double used = solution.workload_mips.empty() ? 0.0 : solution.workload_mips[n];
    out.push_back({t.nodes[n].id, *t.nodes[n].wavelength,
                   used / t.nodes[n].capacity_mips});
  }
  return out;
}

std::vector<std::string> AuditFlowConservation(const PlacementProblem& problem,
                                               const PlacementSolution& solution) {
  std::vector<std::string> out;
  const auto& t = problem.topology;
  for (size_t k = 0; k < problem.tasks.size(); ++k) {
    const int d = solution.node_of_task[k];
    const double f = problem.tasks[k].flow_mbps;
    std::map<std::string, double> net;  // outflow - inflow
    for (int li : t.routes[d].links) {
      net[t.links[li].from] += f;
      net[t.links[li].to] -= f;
    }
    for (const auto& [v, balance] : net) {
      double expect = 0.0;
      if (v == "OLT") expect = f;
      if (v == t.nodes[d].id) expect = -f;
      if (std::abs(balance - expect) > Slack(f)) {
        out.push_back("task " + std::to_string(problem.tasks[k].id) +
                      " unbalanced at " + v);
      }
    }
  }
  return out;
}

std::vector<std::string> AuditCapacitySaturation(const PlacementProblem& problem,
                                                 const PlacementSolution& solution) {
  std::vector<std::string> out;
  const auto& t = problem.topology;
  for (size_t k = 0; k < problem.tasks.size(); ++k) {
    const TaskDemand& task = problem.tasks[k];
    const int at = solution.node_of_task[k];
    const double here = PlacementCost(problem, task, at);
    for (size_t n = 0; n < t.nodes.size(); ++n) {
      const int alt = static_cast<int>(n);
      if (alt == at || !problem.Allowed(task, alt)) continue;
      const double there = PlacementCost(problem, task, alt);
      if (!(there < here - Slack(here))) continue;
      const double node_room = t.nodes[alt].capacity_mips - solution.workload_mips[alt];
      bool blocked = task.workload_mips > node_room + Slack(node_room);
      const auto& own = t.routes[at].links;
      for (int li : t.routes[alt].links) {
        double room = t.links[li].capacity_mbps - solution.link_flow_mbps[li];
        if (std::find(own.begin(), own.end(), li) != own.end()) room += task.flow_mbps;
        blocked = blocked || task.flow_mbps > room + Slack(room);
      }
      if (!blocked) {
        out.push_back("task " + std::to_string(task.id) + " at " + t.nodes[at].id +
                      " could move to cheaper " + t.nodes[alt].id);
      }
    }
  }
  return out;
}

std::vector<SweepRow> Sweep(const topology::TopologyConfig& topology,
                            const SweepSpec& spec, const SolveOptions& options,
                            bool no_self_processing) {
  std::vector<SweepRow> rows;
  const std::vector<int> sources = topology.MobileIndices();
  for (double drr : spec.drr_values) {
    for (double w : spec.workload_values) {
      PlacementProblem p;
      p.topology = topology;
      p.no_self_processing = no_self_processing;
      p.tasks = DemandsFromDrr(w, drr, spec.task_count, sources);
      SweepRow row;
      row.drr = drr;
      row.workload_mips = w;
      try {
        const PlacementSolution s = Solve(p, options);
        row.feasible = true;
        row.power = MakePowerReport(p, s);
        row.utilization = MakeUtilizationReport(p, s);
        row.stats = s.stats;
      } catch (const InfeasibleError& e) {
        row.infeasible_constraint = e.constraint();
        row.power = MakePowerReport(p, PlacementSolution{});
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace owcfog::placement
