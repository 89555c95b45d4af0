// Copyright 2026 The Visplan Authors
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

#ifndef VISPLAN_LP_HPP
#define VISPLAN_LP_HPP

#include <limits>
#include <utility>
#include <vector>

namespace visplan::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Feasibility tolerance on returned points.
inline constexpr double kFeasTol = 1e-7;
/// Reduced-cost (optimality) tolerance.
inline constexpr double kOptTol = 1e-9;
/// Allowed gap between the primal value and the dual certificate.
inline constexpr double kDualityTol = 1e-6;

enum class Sense { le, ge, eq };

/// Dense maximization LP over non-negative variables with optional upper
/// bounds and sparse constraint rows. Small, deterministic instances only.
struct LpModel {
  int num_vars = 0;
  std::vector<double> objective;  // size num_vars
  std::vector<double> upper;      // size num_vars, kInfinity when unbounded

  struct Row {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    Sense sense = Sense::le;
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  /// Adds a variable with the given objective coefficient; returns its index.
  int add_var(double objective_coeff, double upper_bound = kInfinity);
  void add_row(std::vector<std::pair<int, double>> terms, Sense sense,
               double rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

/// An optimal basic feasible solution (vertex), or an infeasible/unbounded
/// verdict. On optimal exit the solver certifies itself with a dual bound:
/// row_duals/bound_duals form a feasible dual whose value matches the primal
/// within kDualityTol.
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;

  std::vector<double> row_duals;    // one per model row
  std::vector<double> bound_duals;  // one per variable upper bound (0 if none)
  double dual_value = 0.0;

  /// Basic column indices in the augmented (structural + slack) system;
  /// structural columns are < num_vars. Identifies the vertex.
  std::vector<int> basis;
};

/// Two-phase dense simplex with Bland's anti-cycling rule.
/// Throws Error(Errc::structure) for malformed models and
/// Error(Errc::numeric) if the optimal exit fails self-certification.
LpSolution solve_lp(const LpModel& model);

}  // namespace visplan::lp

#endif  // VISPLAN_LP_HPP
