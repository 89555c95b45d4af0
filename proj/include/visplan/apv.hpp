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

#ifndef VISPLAN_APV_HPP
#define VISPLAN_APV_HPP

#include "visplan/instance.hpp"

namespace visplan {

/// Products grouped by their visibility requirement: levels[t] holds the
/// products that must be shown to exactly t customers, t = 0..horizon.
/// The levels partition the product universe.
struct VisibilityPartition {
  std::vector<std::vector<int>> levels;
};

VisibilityPartition visibility_partition(const Instance& instance);

/// Instrumentation for the nested solver's complexity property: number of
/// price-ordered candidates whose inclusion was tested across all customers.
struct SolveApvStats {
  long long candidate_inspections = 0;
};

/// Exact optimum of the visibility-constrained planning problem.
///
/// Customer t receives the expanded set of all products whose visibility
/// requirement is at least t. The plan is nested (each assortment contains
/// the next customer's) and is computed back to front: once customer t+1's
/// assortment is known, only the price-ordered products outside it need to
/// be tested, stopping at the first rejection, for O(n + T) work overall.
///
/// Always feasible; never throws for a valid instance.
Plan solve_apv(const Instance& instance, SolveApvStats* stats = nullptr);

/// Enumeration guard for the brute-force oracles: instances with
/// num_products * horizon above this are rejected.
inline constexpr int kBruteForceCellLimit = 16;

/// Exact optimum by enumerating every sequence of assortments that meets
/// the visibility requirements. Test oracle only; guarded by
/// kBruteForceCellLimit (Error(Errc::too_large) beyond it).
Plan brute_force_apv(const Instance& instance);

}  // namespace visplan

#endif  // VISPLAN_APV_HPP
