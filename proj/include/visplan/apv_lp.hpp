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

#ifndef VISPLAN_APV_LP_HPP
#define VISPLAN_APV_LP_HPP

#include "visplan/instance.hpp"
#include "visplan/lp.hpp"

namespace visplan {

/// Purchase-probability threshold below which a variable counts as zero
/// during plan extraction; matched to the LP feasibility tolerance.
inline constexpr double kLpMembershipTol = 1e-7;

/// Column layout of the planning LP: one purchase-probability variable per
/// (option, customer) pair, option 0 being the no-purchase option and
/// option i >= 1 being product i-1.
struct ApvLpLayout {
  int num_products = 0;
  int horizon = 0;

  int column(int option, int customer) const {
    return customer * (num_products + 1) + option;
  }
  int num_columns() const { return horizon * (num_products + 1); }
  int option_of(int column) const { return column % (num_products + 1); }
  int customer_of(int column) const { return column / (num_products + 1); }
};

struct ApvLp {
  lp::LpModel model;
  ApvLpLayout layout;
};

/// Compact LP whose optimum equals the visibility-constrained planning
/// optimum. Per customer: the probabilities sum to one; products within
/// their required window are pinned to their MNL choice probability
/// (variable = weight times the no-purchase variable); afterwards they are
/// only capped by it.
ApvLp build_apv_lp(const Instance& instance);

/// Reads an optimal plan off a basic feasible solution of the planning LP:
/// customer t is offered every product with positive purchase probability.
///
/// Requires `sol` optimal for build_apv_lp(instance). Throws
/// Error(Errc::extraction) when the solution is not at a vertex (a capped
/// variable sits strictly between its bounds) or the rebuilt plan does not
/// reproduce the LP value within 1e-6.
Plan extract_plan(const Instance& instance, const ApvLp& lp,
                  const lp::LpSolution& sol);

}  // namespace visplan

#endif  // VISPLAN_APV_LP_HPP
