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

#include "owcfog/wdma.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace owcfog::wdma {

using signal::Assignment;
using signal::Link;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;
constexpr double kCapacityTol = 1e-9;

std::string Idx(std::initializer_list<std::pair<const char*, int>> kv) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << ']';
  return os.str();
}

}  // namespace

void AllocationProblem::Validate() const {
  if (users() <= 0 || aps() <= 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "empty problem: need at least one user and one access point");
  }
  if (rate_bps.users() != users() || rate_bps.aps() != aps()) {
    throw Error(ErrorKind::kInvalidArgument, "rate table dimensions differ");
  }
  if (!(sinr_floor > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "SINR floor must be > 0");
  }
}

AllocationProblem MakeProblem(const std::vector<channel::ChannelRecord>& records,
                              int users, int aps,
                              const channel::ReceiverSpec& rx,
                              double sinr_floor_db, double onu_capacity_bps) {
  AllocationProblem p;
  p.budget = signal::MakeLinkBudget(records, users, aps, rx);
  p.rate_bps = LinkTable(users, aps);
  for (int u = 0; u < users; ++u) {
    for (int a = 0; a < aps; ++a) {
      for (int l = 0; l < kNumWavelengths; ++l) {
        p.rate_bps.at(u, a, l) =
            records[(static_cast<size_t>(u) * aps + a) * kNumWavelengths + l]
                .rate_bps;
      }
    }
  }
  p.sinr_floor = std::pow(10.0, sinr_floor_db / 10.0);
  p.onu_capacity_bps = onu_capacity_bps;
  return p;
}

std::string Variable::Name() const {
  switch (kind) {
    case VarKind::kSelector:
      return "S" + Idx({{"u", u}, {"a", a}, {"l", l}});
    case VarKind::kGamma:
      return "gamma" + Idx({{"u", u}, {"a", a}, {"l", l}});
    case VarKind::kPhi:
      return "phi" + Idx({{"m", m}, {"l", l}, {"u", u}, {"a", a}, {"b", b}});
  }
  return {};
}

double DefaultBigM(const AllocationProblem& problem) {
  double best = 0.0;
  const auto& b = problem.budget;
  for (int u = 0; u < problem.users(); ++u) {
    for (int a = 0; a < problem.aps(); ++a) {
      for (int l = 0; l < kNumWavelengths; ++l) {
        best = std::max(best, b.signal.at(u, a, l) / b.preamp);
      }
    }
  }
  return 10.0 * std::max(best, problem.sinr_floor);
}

LinearizedModel::LinearizedModel(AllocationProblem problem, double big_m)
    : problem_(std::move(problem)), big_m_(big_m) {
  const int U = problem_.users(), A = problem_.aps(), L = kNumWavelengths;
  const auto& bud = problem_.budget;

  for (int u = 0; u < U; ++u) {
    for (int a = 0; a < A; ++a) {
      for (int l = 0; l < L; ++l) {
        AddVar({VarKind::kSelector, u, a, l, -1, -1, 0.0, 1.0, true});
      }
    }
  }
  for (int u = 0; u < U; ++u) {
    for (int a = 0; a < A; ++a) {
      for (int l = 0; l < L; ++l) {
        const int g = AddVar({VarKind::kGamma, u, a, l, -1, -1, 0.0, kInf, false});
        objective_.push_back({g, 1.0});
      }
    }
  }
  phi_index_.assign(static_cast<size_t>(U) * L * U * A * A, -1);
  for (int m = 0; m < U; ++m) {
    for (int l = 0; l < L; ++l) {
      for (int u = 0; u < U; ++u) {
        if (u == m) continue;
        for (int a = 0; a < A; ++a) {
          for (int b = 0; b < A; ++b) {
            if (a == b) continue;
            const size_t key =
                ((((static_cast<size_t>(m) * L + l) * U + u) * A + a) * A) + b;
            phi_index_[key] =
                AddVar({VarKind::kPhi, u, a, l, m, b, 0.0, kInf, false});
          }
        }
      }
    }
  }

  // Each (ap, wavelength) channel serves at most one user.
  for (int a = 0; a < A; ++a) {
    for (int l = 0; l < L; ++l) {
      Constraint row{"channel_once" + Idx({{"a", a}, {"l", l}}), {}, Sense::kLessEqual, 1.0};
      for (int u = 0; u < U; ++u) row.terms.push_back({Selector(u, a, l), 1.0});
      rows_.AddRow(std::move(row));
    }
  }
  // Exactly one link per user.
  for (int u = 0; u < U; ++u) {
    Constraint row{"one_link" + Idx({{"u", u}}), {}, Sense::kEqual, 1.0};
    for (int a = 0; a < A; ++a) {
      for (int l = 0; l < L; ++l) row.terms.push_back({Selector(u, a, l), 1.0});
    }
    rows_.AddRow(std::move(row));
  }
  // Big-M rows forcing phi = gamma[u][a][l] * S[m][b][l].
  for (size_t v = 0; v < vars_.size(); ++v) {
    const Variable& x = vars_[v];
    if (x.kind != VarKind::kPhi) continue;
    const int phi = static_cast<int>(v);
    const int s = Selector(x.m, x.b, x.l);
    const int g = Gamma(x.u, x.a, x.l);
    const std::string idx =
        Idx({{"m", x.m}, {"l", x.l}, {"u", x.u}, {"a", x.a}, {"b", x.b}});
    rows_.AddRow({"phi_nonneg" + idx, {{phi, 1.0}}, Sense::kGreaterEqual, 0.0});
    rows_.AddRow({"phi_select" + idx, {{phi, 1.0}, {s, -big_m_}}, Sense::kLessEqual, 0.0});
    rows_.AddRow({"phi_gamma" + idx, {{phi, 1.0}, {g, -1.0}}, Sense::kLessEqual, 0.0});
    rows_.AddRow({"phi_lower" + idx, {{phi, 1.0}, {s, -big_m_}, {g, -1.0}},
            Sense::kGreaterEqual, -big_m_});
  }
  // Linearized SINR definition (receiver noise is sigma_Rx) and the SINR
  // floor in its conditional form gamma >= floor * S.
  for (int u = 0; u < U; ++u) {
    for (int a = 0; a < A; ++a) {
      for (int l = 0; l < L; ++l) {
        const std::string idx = Idx({{"u", u}, {"a", a}, {"l", l}});
        const int g = Gamma(u, a, l);
        Constraint row{"sinr_def" + idx, {}, Sense::kEqual, 0.0};
        double gamma_coef = bud.preamp;
        for (int b = 0; b < A; ++b) {
          if (b == a) continue;
          gamma_coef += bud.shot.at(u, b, l);
          const double c = bud.signal.at(u, b, l) - bud.shot.at(u, b, l);
          for (int m = 0; m < U; ++m) {
            if (m == u) continue;
            row.terms.push_back({Phi(m, l, u, a, b), c});
          }
        }
        row.terms.push_back({g, gamma_coef});
        row.terms.push_back({Selector(u, a, l), -bud.signal.at(u, a, l)});
        rows_.AddRow(std::move(row));
        rows_.AddRow({"sinr_floor" + idx,
                {{g, 1.0}, {Selector(u, a, l), -problem_.sinr_floor}},
                Sense::kGreaterEqual,
                0.0});
      }
    }
  }
  // ONU capacity, not exceeded.
  for (int a = 0; a < A; ++a) {
    Constraint row{"onu_capacity" + Idx({{"a", a}}), {}, Sense::kLessEqual,
                   problem_.onu_capacity_bps};
    for (int u = 0; u < U; ++u) {
      for (int l = 0; l < L; ++l) {
        row.terms.push_back({Selector(u, a, l), problem_.rate_bps.at(u, a, l)});
      }
    }
    rows_.AddRow(std::move(row));
  }
}

int LinearizedModel::AddVar(Variable v) {
  vars_.push_back(v);
  return rows_.AddVar(v.lower, v.upper, v.integer);
}

int LinearizedModel::Selector(int u, int a, int l) const {
  return (u * problem_.aps() + a) * kNumWavelengths + l;
}

int LinearizedModel::Gamma(int u, int a, int l) const {
  return problem_.users() * problem_.aps() * kNumWavelengths + Selector(u, a, l);
}

int LinearizedModel::Phi(int m, int l, int u, int a, int b) const {
  const int U = problem_.users(), A = problem_.aps();
  const size_t key =
      ((((static_cast<size_t>(m) * kNumWavelengths + l) * U + u) * A + a) * A) + b;
  return phi_index_[key];
}

size_t LinearizedModel::CountBinary() const {
  return static_cast<size_t>(std::count_if(
      vars_.begin(), vars_.end(), [](const Variable& v) { return v.integer; }));
}

size_t LinearizedModel::CountPhi() const {
  return static_cast<size_t>(std::count_if(
      vars_.begin(), vars_.end(),
      [](const Variable& v) { return v.kind == VarKind::kPhi; }));
}

std::vector<double> LinearizedModel::PointFor(const Assignment& assignment) const {
  const int U = problem_.users(), A = problem_.aps();
  std::vector<double> x(vars_.size(), 0.0);
  std::vector<int> channel_user(static_cast<size_t>(A) * kNumWavelengths, -1);
  for (int u = 0; u < U; ++u) {
    for (int a = 0; a < A; ++a) {
      for (Wavelength w : kAllWavelengths) {
        if (!assignment.Get(u, a, w)) continue;
        x[Selector(u, a, Index(w))] = 1.0;
        channel_user[a * kNumWavelengths + Index(w)] = u;
      }
    }
  }
  for (int u = 0; u < U; ++u) {
    for (int a = 0; a < A; ++a) {
      for (Wavelength w : kAllWavelengths) {
        if (!assignment.Get(u, a, w)) continue;
        x[Gamma(u, a, Index(w))] =
            signal::LinearizedGamma(problem_.budget, u, Link{a, w}, channel_user);
      }
    }
  }
  for (size_t v = 0; v < vars_.size(); ++v) {
    const Variable& p = vars_[v];
    if (p.kind != VarKind::kPhi) continue;
    x[v] = x[Gamma(p.u, p.a, p.l)] * x[Selector(p.m, p.b, p.l)];
  }
  return x;
}

double LinearizedModel::ObjectiveValue(const std::vector<double>& point) const {
  return linear::Evaluate(objective_, point);
}

std::vector<std::string> LinearizedModel::Violations(
    const std::vector<double>& point, double tol) const {
  return rows_.Violations(point, tol);
}

std::pair<double, double> LinearizedModel::ImpliedBounds(
    int var, const std::vector<double>& point,
    const std::vector<std::string>& prefixes) const {
  return rows_.ImpliedBounds(var, point, prefixes);
}

LinearizedModel BuildModel(const AllocationProblem& problem,
                           std::optional<double> big_m) {
  problem.Validate();
  const double m = big_m.value_or(DefaultBigM(problem));
  return LinearizedModel(problem, m);
}

namespace {

// Depth-first search; the most constrained users branch first and each tries
// the free channels by decreasing SINR bound. Equal objectives are resolved
// towards the lexicographically smallest per-user channel vector.
class AllocationSearch {
 public:
  AllocationSearch(const AllocationProblem& p, double time_limit_s,
                   bool enforce_onu, bool prune)
      : p_(p),
        U_(p.users()),
        n_ch_(p.aps() * kNumWavelengths),
        enforce_onu_(enforce_onu),
        prune_(prune),
        time_limit_s_(time_limit_s),
        start_(std::chrono::steady_clock::now()),
        channel_user_(static_cast<size_t>(n_ch_), -1),
        choice_(static_cast<size_t>(U_), -1),
        onu_load_(static_cast<size_t>(p.aps()), 0.0),
        suffix_(static_cast<size_t>(p.aps()) + 1, 0.0) {}

  void Run() {
    OrderUsers();
    if (prune_) root_bound_ = Bound(0);
    Dfs(0);
  }

  bool found() const { return !best_choice_.empty(); }
  const std::vector<int>& best_choice() const { return best_choice_; }
  double best() const { return best_; }
  long long nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }
  double root_bound() const { return root_bound_; }

 private:
  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  // Upper bound on the SINR of user u on channel c given the current
  // occupancy: occupied same-colour channels interfere, free ones contribute
  // at least min(P, sigma).
  double Term(int u, int b, int l) const {
    const auto& bud = p_.budget;
    const int other = channel_user_[b * kNumWavelengths + l];
    if (other >= 0 && other != u) return bud.signal.at(u, b, l);
    if (other < 0) return std::min(bud.signal.at(u, b, l), bud.shot.at(u, b, l));
    return bud.shot.at(u, b, l);
  }

  double Ratio(int u, int a, int l, double denom) const {
    const double s = p_.budget.signal.at(u, a, l);
    return denom > 0.0 ? s / denom : (s > 0.0 ? kInf : 0.0);
  }

  double GammaBound(int u, int c) const {
    const int a = c / kNumWavelengths, l = c % kNumWavelengths;
    double denom = p_.budget.preamp;
    for (int b = 0; b < p_.aps(); ++b) {
      if (b != a) denom += Term(u, b, l);
    }
    return Ratio(u, a, l, denom);
  }

  // Best bound over the free channels of an unplaced user; the interference
  // of the other access points comes from prefix and suffix sums.
  double BestFreeBound(int u, double floor) {
    const int n = p_.aps();
    double best = -kInf;
    for (int l = 0; l < kNumWavelengths; ++l) {
      suffix_[n] = 0.0;
      for (int b = n - 1; b >= 0; --b) suffix_[b] = suffix_[b + 1] + Term(u, b, l);
      double prefix = 0.0;
      for (int a = 0; a < n; ++a) {
        const int c = a * kNumWavelengths + l;
        if (channel_user_[c] < 0 && OnuFits(u, c)) {
          const double g = Ratio(u, a, l, p_.budget.preamp + (prefix + suffix_[a + 1]));
          if (g >= floor) best = std::max(best, g);
        }
        prefix += Term(u, a, l);
      }
    }
    return best;
  }

  // Bound on the objective of any completion once users [0, next) are placed;
  // -inf when no completion can meet the SINR floor or ONU capacity.
  double Bound(int next) {
    const double floor = p_.sinr_floor * (1.0 - kRelTol);
    double total = 0.0;
    for (int d = 0; d < next; ++d) {
      const int u = perm_[d];
      const double g = GammaBound(u, choice_[u]);
      if (g < floor) return -kInf;
      total += g;
    }
    for (int d = next; d < U_; ++d) {
      const int u = perm_[d];
      const double best = BestFreeBound(u, floor);
      if (best == -kInf) return -kInf;
      total += best;
    }
    return total;
  }

  // Users with the fewest channels above the floor branch first.
  void OrderUsers() {
    const double floor = p_.sinr_floor * (1.0 - kRelTol);
    std::vector<std::pair<int, double>> key(static_cast<size_t>(U_));
    for (int u = 0; u < U_; ++u) {
      int options = 0;
      double best = 0.0;
      for (int c = 0; c < n_ch_; ++c) {
        const double g = GammaBound(u, c);
        if (g >= floor) ++options;
        best = std::max(best, g);
      }
      key[u] = {options, -best};
    }
    perm_.resize(static_cast<size_t>(U_));
    for (int u = 0; u < U_; ++u) perm_[u] = u;
    if (!prune_) return;
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&](int x, int y) { return key[x] < key[y]; });
  }

  bool OnuFits(int u, int c) const {
    if (!enforce_onu_) return true;
    const int a = c / kNumWavelengths, l = c % kNumWavelengths;
    return onu_load_[a] + p_.rate_bps.at(u, a, l) <=
           p_.onu_capacity_bps * (1.0 + kCapacityTol);
  }

  void Leaf() {
    double total = 0.0;
    for (int u = 0; u < U_; ++u) {
      const double g = signal::LinearizedGamma(
          p_.budget, u, Link::FromChannel(choice_[u]), channel_user_);
      if (g < p_.sinr_floor) return;
      total += g;
    }
    if (!found() || total > best_ ||
        (total == best_ && choice_ < best_choice_)) {
      best_ = total;
      best_choice_ = choice_;
    }
  }

  void Dfs(int depth) {
    ++nodes_;
    if ((nodes_ & 1023) == 0 && Elapsed() > time_limit_s_) timed_out_ = true;
    if (timed_out_) return;
    if (depth == U_) {
      Leaf();
      return;
    }
    const int u = perm_[depth];
    // Most promising channels first so good incumbents appear early; ties
    // are still settled lexicographically in Leaf().
    std::vector<std::pair<double, int>> order;
    for (int c = 0; c < n_ch_; ++c) {
      if (channel_user_[c] >= 0 || !OnuFits(u, c)) continue;
      order.emplace_back(prune_ ? -GammaBound(u, c) : 0.0, c);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [key, c] : order) {
      const int a = c / kNumWavelengths, l = c % kNumWavelengths;
      channel_user_[c] = u;
      choice_[u] = c;
      onu_load_[a] += p_.rate_bps.at(u, a, l);
      bool explore = true;
      if (prune_) {
        const double bound = Bound(depth + 1);
        explore = bound > -kInf &&
                  (!found() || bound >= best_ - kRelTol * std::abs(best_));
      }
      if (explore) Dfs(depth + 1);
      onu_load_[a] -= p_.rate_bps.at(u, a, l);
      choice_[u] = -1;
      channel_user_[c] = -1;
      if (timed_out_) return;
    }
  }

  const AllocationProblem& p_;
  const int U_;
  const int n_ch_;
  const bool enforce_onu_;
  const bool prune_;
  const double time_limit_s_;
  const std::chrono::steady_clock::time_point start_;
  std::vector<int> channel_user_;
  std::vector<int> choice_;
  std::vector<double> onu_load_;
  std::vector<double> suffix_;
  std::vector<int> perm_;
  std::vector<int> best_choice_;
  double best_ = -kInf;
  double root_bound_ = kInf;
  long long nodes_ = 0;
  bool timed_out_ = false;
};

AllocationSolution MakeSolution(const AllocationProblem& p,
                                const std::vector<int>& choice) {
  AllocationSolution sol;
  std::vector<std::optional<Link>> links;
  for (int c : choice) links.push_back(Link::FromChannel(c));
  sol.assignment = Assignment::FromLinks(p.aps(), links);
  const auto br = signal::Sinr(sol.assignment, p.budget, signal::SinrMode::kLinearized);
  for (int u = 0; u < p.users(); ++u) {
    const Link link = Link::FromChannel(choice[u]);
    sol.links.push_back(link);
    sol.gamma.push_back(br[u].gamma);
    sol.gamma_db.push_back(br[u].gamma_db);
    double rate = p.rate_bps.at(u, link.ap, Index(link.wavelength));
    if (br[u].gamma_db < channel::kFecFreeSinrDb) rate *= channel::kFecRateFactor;
    sol.rate_bps.push_back(rate);
    sol.objective += br[u].gamma;
  }
  return sol;
}

[[noreturn]] void ReportInfeasible(const AllocationProblem& p) {
  const int channels = p.aps() * kNumWavelengths;
  if (p.users() > channels) {
    throw InfeasibleError("channel_once", std::to_string(p.users()) + " users but only " +
                                     std::to_string(channels) +
                                     " (ap, wavelength) channels");
  }
  const double floor = p.sinr_floor * (1.0 - kRelTol);
  for (int u = 0; u < p.users(); ++u) {
    double best = 0.0;
    for (int a = 0; a < p.aps(); ++a) {
      for (int l = 0; l < kNumWavelengths; ++l) {
        double denom = p.budget.preamp;
        for (int b = 0; b < p.aps(); ++b) {
          if (b != a) {
            denom += std::min(p.budget.signal.at(u, b, l), p.budget.shot.at(u, b, l));
          }
        }
        best = std::max(best, p.budget.signal.at(u, a, l) / denom);
      }
    }
    if (best < floor) {
      throw InfeasibleError(
          "sinr_floor", "user " + std::to_string(u) + " cannot reach the SINR floor on "
                  "any link (best " + std::to_string(10.0 * std::log10(best)) +
                  " dB)");
    }
  }
  AllocationSearch relaxed(p, kInf, /*enforce_onu=*/false, /*prune=*/true);
  relaxed.Run();
  if (relaxed.found()) {
    throw InfeasibleError("onu_capacity",
                          "every assignment meeting the SINR floor exceeds an "
                          "ONU capacity");
  }
  throw InfeasibleError("sinr_floor",
                        "no assignment lets every user meet the SINR floor "
                        "under mutual interference");
}

}  // namespace

AllocationSolution SolveBranchAndBound(const LinearizedModel& model,
                                       double time_limit_s) {
  const AllocationProblem& p = model.problem();
  p.Validate();
  const auto start = std::chrono::steady_clock::now();
  AllocationSearch search(p, time_limit_s, /*enforce_onu=*/true, /*prune=*/true);
  search.Run();
  if (!search.found()) {
    if (search.timed_out()) {
      throw Error(ErrorKind::kResource,
                  "time limit reached before any feasible assignment");
    }
    ReportInfeasible(p);
  }
  AllocationSolution sol = MakeSolution(p, search.best_choice());
  sol.stats.nodes = search.nodes();
  sol.stats.optimal = !search.timed_out();
  sol.stats.gap =
      sol.stats.optimal
          ? 0.0
          : std::max(0.0, (search.root_bound() - sol.objective) /
                              std::max(std::abs(sol.objective), 1e-300));
  sol.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

AllocationSolution SolveExhaustive(const AllocationProblem& problem, double cap) {
  problem.Validate();
  const double size = std::pow(static_cast<double>(problem.aps() * kNumWavelengths),
                               problem.users());
  if (size > cap) {
    std::ostringstream os;
    os << "exhaustive search needs " << size << " candidates ("
       << problem.aps() * kNumWavelengths << "^" << problem.users()
       << "), cap is " << cap;
    throw Error(ErrorKind::kResource, os.str());
  }
  const auto start = std::chrono::steady_clock::now();
  const int U = problem.users(), n_ch = problem.aps() * kNumWavelengths;
  std::vector<int> choice(static_cast<size_t>(U), -1);
  std::vector<int> channel_user(static_cast<size_t>(n_ch), -1);
  std::vector<int> best_choice;
  double best = -kInf;
  long long candidates = 0;

  auto visit = [&](auto&& self, int u) -> void {
    if (u == U) {
      ++candidates;
      std::vector<double> load(static_cast<size_t>(problem.aps()), 0.0);
      double total = 0.0;
      for (int v = 0; v < U; ++v) {
        const Link link = Link::FromChannel(choice[v]);
        load[link.ap] += problem.rate_bps.at(v, link.ap, Index(link.wavelength));
        const double g =
            signal::LinearizedGamma(problem.budget, v, link, channel_user);
        if (g < problem.sinr_floor) return;
        total += g;
      }
      for (double l : load) {
        if (l > problem.onu_capacity_bps * (1.0 + kCapacityTol)) return;
      }
      if (best_choice.empty() || total > best ||
          (total == best && choice < best_choice)) {
        best = total;
        best_choice = choice;
      }
      return;
    }
    for (int c = 0; c < n_ch; ++c) {
      if (channel_user[c] >= 0) continue;
      channel_user[c] = u;
      choice[u] = c;
      self(self, u + 1);
      channel_user[c] = -1;
      choice[u] = -1;
    }
  };
  visit(visit, 0);
  if (best_choice.empty()) ReportInfeasible(problem);
  AllocationSolution sol = MakeSolution(problem, best_choice);
  sol.stats.nodes = candidates;
  sol.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

std::vector<Violation> CheckFeasibility(const Assignment& assignment,
                                        const AllocationProblem& problem) {
  std::vector<Violation> out;
  const int U = problem.users(), A = problem.aps();
  if (assignment.users() != U || assignment.aps() != A) {
    out.push_back({"shape", "assignment dimensions differ from the problem"});
    return out;
  }
  for (int a = 0; a < A; ++a) {
    for (Wavelength w : kAllWavelengths) {
      const int n = assignment.UsersOnChannel(a, w);
      if (n > 1) {
        out.push_back({"channel_once", Idx({{"a", a}, {"l", Index(w)}}) + " carries " +
                                  std::to_string(n) + " users"});
      }
    }
  }
  for (int u = 0; u < U; ++u) {
    const int n = assignment.LinksOfUser(u);
    if (n != 1) {
      out.push_back({"one_link", Idx({{"u", u}}) + " has " + std::to_string(n) +
                                   " links"});
    }
  }
  if (out.empty()) {
    const auto br =
        signal::Sinr(assignment, problem.budget, signal::SinrMode::kLinearized);
    for (const auto& b : br) {
      if (b.gamma < problem.sinr_floor) {
        out.push_back({"sinr_floor", Idx({{"u", b.user}}) + " SINR " +
                                   std::to_string(b.gamma_db) + " dB"});
      }
    }
  }
  for (int a = 0; a < A; ++a) {
    double load = 0.0;
    for (int u = 0; u < U; ++u) {
      for (Wavelength w : kAllWavelengths) {
        if (assignment.Get(u, a, w)) load += problem.rate_bps.at(u, a, Index(w));
      }
    }
    if (load > problem.onu_capacity_bps * (1.0 + kCapacityTol)) {
      out.push_back({"onu_capacity", Idx({{"a", a}}) + " carries " +
                                 std::to_string(load) + " bit/s"});
    }
  }
  return out;
}

}  // namespace owcfog::wdma
