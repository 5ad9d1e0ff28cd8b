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

#include "owcfog/linear.hpp"

#include <algorithm>
#include <cmath>

namespace owcfog::linear {

int RowSet::AddVar(double lower, double upper, bool integer) {
  vars_.push_back({lower, upper, integer});
  rows_of_var_.emplace_back();
  return static_cast<int>(vars_.size()) - 1;
}

void RowSet::AddRow(Constraint row) {
  const int r = static_cast<int>(rows_.size());
  for (const Term& t : row.terms) rows_of_var_[t.var].push_back(r);
  rows_.push_back(std::move(row));
}

double Evaluate(const std::vector<Term>& terms, const std::vector<double>& point) {
  double total = 0.0;
  for (const Term& t : terms) total += t.coef * point[t.var];
  return total;
}

std::vector<std::string> RowSet::Violations(const std::vector<double>& point,
                                            double tol) const {
  std::vector<std::string> out;
  for (const Constraint& row : rows_) {
    double lhs = 0.0, scale = std::abs(row.rhs);
    for (const Term& t : row.terms) {
      lhs += t.coef * point[t.var];
      scale = std::max(scale, std::abs(t.coef * point[t.var]));
    }
    const double slack = tol * std::max(1.0, scale);
    bool bad = false;
    switch (row.sense) {
      case Sense::kLessEqual:
        bad = lhs > row.rhs + slack;
        break;
      case Sense::kGreaterEqual:
        bad = lhs < row.rhs - slack;
        break;
      case Sense::kEqual:
        bad = std::abs(lhs - row.rhs) > slack;
        break;
    }
    if (bad) out.push_back(row.label);
  }
  for (size_t v = 0; v < vars_.size(); ++v) {
    const double slack = tol * std::max(1.0, std::abs(point[v]));
    if (point[v] < vars_[v].lower - slack || point[v] > vars_[v].upper + slack) {
      out.push_back("bounds[" + std::to_string(v) + "]");
    } else if (vars_[v].integer && std::abs(point[v] - std::round(point[v])) > tol) {
      out.push_back("integrality[" + std::to_string(v) + "]");
    }
  }
  return out;
}

std::pair<double, double> RowSet::ImpliedBounds(
    int var, const std::vector<double>& point,
    const std::vector<std::string>& prefixes) const {
  double lo = vars_[var].lower, hi = vars_[var].upper;
  for (int r : rows_of_var_[var]) {
    const Constraint& row = rows_[r];
    const bool wanted = std::any_of(prefixes.begin(), prefixes.end(),
                                    [&](const std::string& p) {
                                      return row.label.rfind(p, 0) == 0;
                                    });
    if (!wanted) continue;
    double coef = 0.0, rest = 0.0;
    for (const Term& t : row.terms) {
      if (t.var == var) {
        coef += t.coef;
      } else {
        rest += t.coef * point[t.var];
      }
    }
    if (coef == 0.0) continue;
    const double bound = (row.rhs - rest) / coef;
    if (row.sense == Sense::kEqual) {
      lo = std::max(lo, bound);
      hi = std::min(hi, bound);
    } else if ((row.sense == Sense::kLessEqual) == (coef > 0.0)) {
      hi = std::min(hi, bound);
    } else {
      lo = std::max(lo, bound);
    }
  }
  return {lo, hi};
}

}  // namespace owcfog::linear
