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

#include "visplan/apv.hpp"

#include <string>

#include "visplan/mnl.hpp"

namespace visplan {

VisibilityPartition visibility_partition(const Instance& instance) {
  VisibilityPartition part;
  part.levels.resize(instance.horizon() + 1);
  for (int i = 0; i < instance.num_products(); ++i) {
    part.levels[instance.visibility_of(i)].push_back(i);
  }
  return part;
}

Plan solve_apv(const Instance& instance, SolveApvStats* stats) {
  const int n = instance.num_products();
  const int T = instance.horizon();
  const VisibilityPartition part = visibility_partition(instance);

  Plan plan;
  plan.assortments.resize(T);

  std::vector<char> member(n, 0);
  std::vector<int> chosen;
  double num = 0.0;
  double den = 1.0;
  int scan_rank = 0;  // never moves backwards: the assortments only grow

  for (int t = T; t >= 1; --t) {
    for (int i : part.levels[t]) {
      if (!member[i]) {
        member[i] = 1;
        chosen.push_back(i);
        num += instance.price(i) * instance.weight(i);
        den += instance.weight(i);
      }
    }
    while (scan_rank < n) {
      const int i = instance.product_by_price_rank(scan_rank);
      if (member[i]) {
        ++scan_rank;
        continue;
      }
      if (stats != nullptr) ++stats->candidate_inspections;
      const double current = num / den;
      const double p = instance.price(i);
      if (p > current || revenue_tie(p, current)) {
        member[i] = 1;
        chosen.push_back(i);
        num += p * instance.weight(i);
        den += instance.weight(i);
        ++scan_rank;
      } else {
        break;  // price-ordered: everything after is rejected too
      }
    }
    plan.assortments[t - 1] = Assortment(instance, chosen);
    plan.objective += num / den;
  }
  return plan;
}

Plan brute_force_apv(const Instance& instance) {
  const int n = instance.num_products();
  const int T = instance.horizon();
  if (n * T > kBruteForceCellLimit) {
    throw Error(Errc::too_large,
                "brute-force enumeration needs products*horizon <= " +
                    std::to_string(kBruteForceCellLimit) + ", got " +
                    std::to_string(n * T));
  }

  // Precompute R(S) for every subset mask.
  std::vector<double> rev(std::size_t{1} << n, 0.0);
  for (unsigned mask = 1; mask < rev.size(); ++mask) {
    double num = 0.0, den = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        num += instance.price(i) * instance.weight(i);
        den += instance.weight(i);
      }
    }
    rev[mask] = num / den;
  }

  const unsigned long long total = 1ull << (n * T);
  const unsigned product_mask = (1u << n) - 1u;
  double best = -1.0;
  unsigned long long best_code = 0;
  for (unsigned long long code = 0; code < total; ++code) {
    bool feasible = true;
    for (int i = 0; i < n && feasible; ++i) {
      int shown = 0;
      for (int t = 0; t < T; ++t) {
        shown += (code >> (t * n + i)) & 1ull;
      }
      feasible = shown >= instance.visibility_of(i);
    }
    if (!feasible) continue;
    double value = 0.0;
    for (int t = 0; t < T; ++t) {
      value += rev[(code >> (t * n)) & product_mask];
    }
    if (value > best) {
      best = value;
      best_code = code;
    }
  }

  Plan plan;
  plan.objective = best;
  plan.assortments.reserve(T);
  for (int t = 0; t < T; ++t) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if ((best_code >> (t * n + i)) & 1ull) members.push_back(i);
    }
    plan.assortments.emplace_back(instance, std::move(members));
  }
  return plan;
}

}  // namespace visplan
