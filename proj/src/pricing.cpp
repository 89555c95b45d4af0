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

#include "visplan/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "visplan/apv.hpp"
#include "visplan/mnl.hpp"

namespace visplan {
namespace {

FeeReport report_for_plan(const Instance& instance, const Plan& plan) {
  const int n = instance.num_products();
  FeeReport report;
  report.unconstrained_value =
      instance.horizon() * unconstrained_optimum(instance).expanded_revenue;
  report.constrained_value = plan.objective;
  report.delta = report.unconstrained_value - report.constrained_value;
  if (std::abs(report.delta) <=
      kRevenueTieTol * std::max(1.0, report.unconstrained_value)) {
    report.delta = 0.0;
  }

  report.contributions.assign(n, 0.0);
  for (const Assortment& s : plan.assortments) {
    const double r = revenue(instance, s);
    for (int i : s.members()) {
      report.contributions[i] += (instance.price(i) - r) * instance.weight(i);
    }
  }

  report.fees.assign(n, 0.0);
  if (report.delta <= 0.0) {
    return report;
  }
  double negative_total = 0.0;
  for (double c : report.contributions) {
    negative_total += std::max(-c, 0.0);
  }
  if (negative_total <= 0.0) {
    report.warning =
        "positive loss but no negative contribution; all fees set to zero";
    return report;
  }
  for (int i = 0; i < n; ++i) {
    const double negative_part = std::max(-report.contributions[i], 0.0);
    if (negative_part > 0.0) {
      report.fees[i] = negative_part / negative_total * report.delta;
    }
  }
  return report;
}

}  // namespace

FeeReport fee_report(const Instance& instance) {
  return report_for_plan(instance, solve_apv(instance));
}

double fee_increment(const Instance& instance, int product) {
  instance.check_product(product);
  const int floor = instance.visibility_of(product);
  if (floor >= instance.horizon()) {
    throw Error(Errc::cannot_increase,
                "visibility floor is already at the horizon");
  }

  Plan plan = solve_apv(instance);
  // Raising the floor to floor+1 only forces `product` into customer
  // floor+1's assortment; every other assortment keeps its forced set.
  const Assortment& affected = plan.assortments[floor];
  if (!affected.contains(product)) {
    std::vector<int> seed = affected.members();
    seed.push_back(product);
    const ExpandedResult grown =
        expanded(instance, Assortment(instance, std::move(seed)));
    plan.objective += grown.expanded_revenue - revenue(instance, affected);
    plan.assortments[floor] = grown.expanded_set;
  }
  return report_for_plan(instance, plan).fees[product];
}

}  // namespace visplan
