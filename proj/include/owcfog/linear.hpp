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

// Explicit linear constraint rows over a flat variable vector, used to audit
// candidate integer points against a MILP formulation.

#ifndef OWCFOG_LINEAR_HPP_
#define OWCFOG_LINEAR_HPP_

#include <string>
#include <utility>
#include <vector>

namespace owcfog::linear {

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::string label;  // family and indices, e.g. "phi_select[m=1,l=0,u=0,a=0,b=2]"
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

struct VarInfo {
  double lower = 0.0;
  double upper = 0.0;
  bool integer = false;
};

class RowSet {
 public:
  int AddVar(double lower, double upper, bool integer);
  void AddRow(Constraint row);

  size_t num_vars() const { return vars_.size(); }
  const std::vector<VarInfo>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }

  // Labels of rows violated by more than `tol` scaled by the row magnitude.
  std::vector<std::string> Violations(const std::vector<double>& point,
                                      double tol) const;
  // [lower, upper] imposed on `var` by its bounds and by the rows whose label
  // starts with one of `prefixes`, every other variable fixed at `point`.
  std::pair<double, double> ImpliedBounds(
      int var, const std::vector<double>& point,
      const std::vector<std::string>& prefixes) const;

 private:
  std::vector<VarInfo> vars_;
  std::vector<Constraint> rows_;
  std::vector<std::vector<int>> rows_of_var_;
};

double Evaluate(const std::vector<Term>& terms, const std::vector<double>& point);

}  // namespace owcfog::linear

#endif  // OWCFOG_LINEAR_HPP_
