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

// Power-minimizing placement of processing tasks on the cloud/fog hierarchy.
//
// A task k requested by mobile s needs W_k MIPS and F_k Mbit/s offloaded from
// the OLT to one processing node n, costing W_k E_n processing watts and
// F_k Psi_n networking watts. Node capacities and link capacities along the
// unique OLT route bound the placement; a mobile never processes its own task
// unless that rule is switched off.

#ifndef OWCFOG_PLACEMENT_HPP_
#define OWCFOG_PLACEMENT_HPP_

#include <string>
#include <vector>

#include "owcfog/linear.hpp"
#include "owcfog/topology.hpp"

namespace owcfog::placement {

struct TaskDemand {
  int id = 0;
  int source = 0;  // index of the requesting mobile in the topology nodes
  double workload_mips = 0.0;
  double flow_mbps = 0.0;
};

// `count` tasks of `workload_mips` each with flow drr * workload, sources
// assigned round-robin over `sources`. Throws kInvalidArgument for count <= 0,
// drr outside (0, 1] or an empty source list. Workloads outside [100, 1500]
// are accepted with a message appended to `warnings`.
std::vector<TaskDemand> DemandsFromDrr(double workload_mips, double drr, int count,
                                       const std::vector<int>& sources,
                                       std::vector<std::string>* warnings = nullptr);

struct PlacementProblem {
  topology::TopologyConfig topology;
  std::vector<TaskDemand> tasks;
  // Big-M linking X to delta; 0 selects 10 x the largest workload.
  double alpha = 0.0;
  bool no_self_processing = true;

  double Alpha() const;
  bool Allowed(const TaskDemand& task, int node) const;
  // Throws kInvalidArgument on malformed tasks or alpha <= max workload.
  void Validate() const;
};

// Per-task cost at a node, W E_n + F Psi_n.
double PlacementCost(const PlacementProblem& problem, const TaskDemand& task,
                     int node);

// Node preference for ties: RoomFog, mobiles by route efficiency then id,
// BuildFog, CampFog, MetroFog, CCloud. Returns rank per node index.
std::vector<int> PreferenceRanks(const topology::TopologyConfig& topology);

struct PlacementStats {
  long long nodes = 0;
  double gap = 0.0;
  bool optimal = true;
  double seconds = 0.0;
};

struct PlacementSolution {
  // delta: node index per task.
  std::vector<int> node_of_task;
  std::vector<double> processing_w;   // per node
  std::vector<double> networking_w;   // per node
  std::vector<double> workload_mips;  // per node
  std::vector<double> link_flow_mbps; // per topology link
  double processing_total_w = 0.0;
  double networking_total_w = 0.0;
  double objective = 0.0;
  PlacementStats stats;

  double Delta(int task, int node) const {
    return node_of_task[task] == node ? 1.0 : 0.0;
  }
};

// Fills the power, workload and flow fields from node_of_task.
PlacementSolution Evaluate(const PlacementProblem& problem,
                           std::vector<int> node_of_task);

enum class Method { kBranchAndBound, kExhaustive };

struct SolveOptions {
  Method method = Method::kBranchAndBound;
  double time_limit_s = 60.0;
  // Exhaustive enumeration refuses above this many candidates unless no
  // capacity binds at the per-task optimum.
  double exhaustive_cap = 1e7;
};

// Throws InfeasibleError naming "node_capacity" or "link_capacity" (with the
// offending task when one task alone cannot be placed).
PlacementSolution Solve(const PlacementProblem& problem,
                        const SolveOptions& options = {});

// Explicit MILP: delta, X, L, lambda (per task, destination and link), P_n
// and networking power variables with their defining rows.
class PlacementModel {
 public:
  explicit PlacementModel(const PlacementProblem& problem);

  const PlacementProblem& problem() const { return problem_; }
  const linear::RowSet& rows() const { return rows_; }
  const std::vector<linear::Term>& objective() const { return objective_; }

  int Delta(int k, int n) const;
  int Workload(int k, int n) const;
  int TaskFlow(int k, int d) const;
  int LinkFlow(int k, int d, int link) const;
  int ProcessingPower(int n) const;
  int NetworkingPower(int n) const;

  // Point of a placement: flows routed along the unique OLT route.
  std::vector<double> PointFor(const std::vector<int>& node_of_task) const;

 private:
  PlacementProblem problem_;
  linear::RowSet rows_;
  std::vector<linear::Term> objective_;
  int n_nodes_ = 0;
  int n_links_ = 0;
  int delta0_ = 0, x0_ = 0, l0_ = 0, lambda0_ = 0, p0_ = 0, q0_ = 0;
};

struct NodePower {
  std::string id;
  topology::NodeKind kind = topology::NodeKind::kRoomFog;
  double workload_mips = 0.0;
  double processing_w = 0.0;
  double networking_w = 0.0;
};

struct PowerReport {
  std::vector<NodePower> nodes;
  double processing_w = 0.0;
  double networking_w = 0.0;
  double total_w = 0.0;
};

PowerReport MakePowerReport(const PlacementProblem& problem,
                            const PlacementSolution& solution);

struct MobileUtilization {
  std::string id;
  Wavelength wavelength = Wavelength::kRed;
  double utilization = 0.0;  // assigned MIPS / capacity
};

std::vector<MobileUtilization> MakeUtilizationReport(
    const PlacementProblem& problem, const PlacementSolution& solution);

// Flow conservation of every task at every vertex; one message per failure.
std::vector<std::string> AuditFlowConservation(const PlacementProblem& problem,
                                               const PlacementSolution& solution);
// A task sitting at a node while a strictly cheaper allowed node exists must
// be explained by that node's capacity or its route's link capacity.
std::vector<std::string> AuditCapacitySaturation(const PlacementProblem& problem,
                                                 const PlacementSolution& solution);

struct SweepRow {
  double drr = 0.0;
  double workload_mips = 0.0;
  bool feasible = false;
  std::string infeasible_constraint;
  PowerReport power;
  std::vector<MobileUtilization> utilization;
  PlacementStats stats;
};

struct SweepSpec {
  std::vector<double> drr_values;
  std::vector<double> workload_values;
  int task_count = 50;
};

// One row per (drr, workload) in drr-major order.
std::vector<SweepRow> Sweep(const topology::TopologyConfig& topology,
                            const SweepSpec& spec, const SolveOptions& options = {},
                            bool no_self_processing = true);

}  // namespace owcfog::placement

#endif  // OWCFOG_PLACEMENT_HPP_
