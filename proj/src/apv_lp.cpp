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

#include "visplan/apv_lp.hpp"

#include <cmath>
#include <string>

#include "visplan/mnl.hpp"

namespace visplan {

ApvLp build_apv_lp(const Instance& instance) {
  const int n = instance.num_products();
  const int T = instance.horizon();
  ApvLp out;
  out.layout = ApvLpLayout{n, T};
  lp::LpModel& model = out.model;

  for (int t = 0; t < T; ++t) {
    model.add_var(0.0);  // no-purchase variable for customer t
    for (int i = 0; i < n; ++i) {
      model.add_var(instance.price(i));
    }
  }

  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, double>> sum_to_one;
    sum_to_one.reserve(n + 1);
    for (int o = 0; o <= n; ++o) {
      sum_to_one.emplace_back(out.layout.column(o, t), 1.0);
    }
    model.add_row(std::move(sum_to_one), lp::Sense::eq, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) {
      const lp::Sense sense =
          t < instance.visibility_of(i) ? lp::Sense::eq : lp::Sense::le;
      model.add_row({{out.layout.column(i + 1, t), 1.0},
                     {out.layout.column(0, t), -instance.weight(i)}},
                    sense, 0.0);
    }
  }
  return out;
}

Plan extract_plan(const Instance& instance, const ApvLp& lp,
                  const lp::LpSolution& sol) {
  if (sol.status != lp::LpStatus::optimal) {
    throw Error(Errc::precondition, "extraction needs an optimal LP solution");
  }
  const int n = instance.num_products();
  const int T = instance.horizon();
  if (static_cast<int>(sol.x.size()) != lp.layout.num_columns()) {
    throw Error(Errc::precondition, "LP solution does not match the layout");
  }

  Plan plan;
  plan.assortments.reserve(T);
  for (int t = 0; t < T; ++t) {
    const double a0 = sol.x[lp.layout.column(0, t)];
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      const double a = sol.x[lp.layout.column(i + 1, t)];
      const double cap = instance.weight(i) * a0;
      if (t >= instance.visibility_of(i) && a > kLpMembershipTol &&
          a < cap - kLpMembershipTol) {
        throw Error(Errc::extraction,
                    "variable for product " + std::to_string(i) +
                        ", customer " + std::to_string(t) +
                        " is strictly between its bounds; not a vertex");
      }
      if (a > kLpMembershipTol) members.push_back(i);
    }
    Assortment s(instance, std::move(members));
    plan.objective += revenue(instance, s);
    plan.assortments.push_back(std::move(s));
  }

  for (int i = 0; i < n; ++i) {
    int shown = 0;
    for (const Assortment& s : plan.assortments) shown += s.contains(i);
    if (shown < instance.visibility_of(i)) {
      throw Error(Errc::extraction, "extracted plan misses a visibility floor");
    }
  }
  if (std::abs(plan.objective - sol.value) >
      1e-6 * std::max(1.0, std::abs(sol.value))) {
    throw Error(Errc::extraction,
                "extracted plan does not reproduce the LP value");
  }
  return plan;
}

}  // namespace visplan
