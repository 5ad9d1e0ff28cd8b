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

// Access point and wavelength allocation maximizing the sum of user SINRs.
//
// The problem is held in two forms: LinearizedModel is the explicit MILP
// (selectors S, SINR variables gamma, big-M product variables phi and the
// constraint rows), used for auditing candidate points; the solvers work on
// the combinatorial form directly, branching on one user's link at a time.

#ifndef OWCFOG_WDMA_HPP_
#define OWCFOG_WDMA_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "owcfog/channel.hpp"
#include "owcfog/linear.hpp"
#include "owcfog/signal.hpp"

namespace owcfog::wdma {

struct AllocationProblem {
  signal::LinkBudget budget;
  // Supported OOK rate R_u^a per (user, ap, wavelength), bit/s.
  LinkTable rate_bps;
  double sinr_floor = 25.118864315095795;  // 10^1.4
  double onu_capacity_bps = 10e9;

  int users() const { return budget.users(); }
  int aps() const { return budget.aps(); }
  // Throws kInvalidArgument on an empty user or AP set.
  void Validate() const;
};

AllocationProblem MakeProblem(const std::vector<channel::ChannelRecord>& records,
                              int users, int aps,
                              const channel::ReceiverSpec& rx,
                              double sinr_floor_db = channel::kSinrFloorDb,
                              double onu_capacity_bps = 10e9);

enum class VarKind { kSelector, kGamma, kPhi };

struct Variable {
  VarKind kind = VarKind::kSelector;
  // Selector/gamma: (u, a, l). Phi: phi[m][l][u][a][b].
  int u = 0, a = 0, l = 0, m = -1, b = -1;
  double lower = 0.0;
  double upper = 0.0;
  bool integer = false;

  std::string Name() const;
};

using linear::Constraint;
using linear::Sense;
using linear::Term;

class LinearizedModel {
 public:
  LinearizedModel(AllocationProblem problem, double big_m);

  const AllocationProblem& problem() const { return problem_; }
  double big_m() const { return big_m_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_.rows(); }
  // Maximized.
  const std::vector<Term>& objective() const { return objective_; }

  int Selector(int u, int a, int l) const;
  int Gamma(int u, int a, int l) const;
  // -1 when m == u or a == b.
  int Phi(int m, int l, int u, int a, int b) const;

  size_t CountBinary() const;
  size_t CountPhi() const;

  // Integer point of an assignment: S from the assignment, gamma from the
  // linearized SINR of each assigned link (zero elsewhere), phi = gamma * S.
  std::vector<double> PointFor(const signal::Assignment& assignment) const;
  double ObjectiveValue(const std::vector<double>& point) const;
  // Labels of rows violated by more than `tol` (scaled by row magnitude).
  std::vector<std::string> Violations(const std::vector<double>& point,
                                      double tol) const;
  // [lower, upper] imposed on `var` by the variable bounds and the rows whose
  // label starts with one of `prefixes`, all other variables fixed at `point`.
  std::pair<double, double> ImpliedBounds(
      int var, const std::vector<double>& point,
      const std::vector<std::string>& prefixes) const;

 private:
  int AddVar(Variable v);

  AllocationProblem problem_;
  double big_m_;
  std::vector<Variable> vars_;
  linear::RowSet rows_;
  std::vector<Term> objective_;
  std::vector<int> phi_index_;
};

// Default big-M: 10 x the largest interference-free SNR P / sigma_Rx.
double DefaultBigM(const AllocationProblem& problem);

// Throws kInvalidArgument ("empty problem") when there are no users or APs.
LinearizedModel BuildModel(const AllocationProblem& problem,
                           std::optional<double> big_m = std::nullopt);

struct SolverStats {
  long long nodes = 0;  // search nodes, or candidates for the exhaustive oracle
  double gap = 0.0;     // relative bound gap of the returned incumbent
  bool optimal = true;
  double seconds = 0.0;
};

struct AllocationSolution {
  signal::Assignment assignment;
  std::vector<signal::Link> links;
  std::vector<double> gamma;
  std::vector<double> gamma_db;
  std::vector<double> rate_bps;  // after the FEC adjustment
  double objective = 0.0;
  SolverStats stats;
};

// Exact optimum, or the incumbent with its gap once `time_limit_s` elapses.
// Ties go to the lexicographically smallest (user, ap, wavelength) links.
// Throws InfeasibleError naming the binding constraint family.
AllocationSolution SolveBranchAndBound(const LinearizedModel& model,
                                       double time_limit_s = 60.0);

// Enumerates every assignment giving each user one link and each channel at
// most one user. Throws kResource when
// (aps * 4)^users exceeds `cap`.
AllocationSolution SolveExhaustive(const AllocationProblem& problem,
                                   double cap = 1e8);

struct Violation {
  std::string constraint;  // "channel_once", "one_link", "sinr_floor", "onu_capacity"
  std::string detail;
};

std::vector<Violation> CheckFeasibility(const signal::Assignment& assignment,
                                        const AllocationProblem& problem);

}  // namespace owcfog::wdma

#endif  // OWCFOG_WDMA_HPP_
