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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "visplan/apv.hpp"
#include "visplan/instgen.hpp"
#include "visplan/mnl.hpp"

using namespace visplan;

namespace {

void check_feasible_and_nested(const Instance& inst, const Plan& plan) {
  REQUIRE(static_cast<int>(plan.assortments.size()) == inst.horizon());
  for (int i = 0; i < inst.num_products(); ++i) {
    int shown = 0;
    for (const Assortment& s : plan.assortments) shown += s.contains(i);
    REQUIRE(shown >= inst.visibility_of(i));
  }
  for (std::size_t t = 0; t + 1 < plan.assortments.size(); ++t) {
    for (int i : plan.assortments[t + 1].members()) {
      REQUIRE(plan.assortments[t].contains(i));
    }
  }
}

}  // namespace

TEST_CASE("visibility partition covers every product once") {
  Instance inst = gen_random(7, 4, 9);
  const VisibilityPartition part = visibility_partition(inst);
  REQUIRE(static_cast<int>(part.levels.size()) == inst.horizon() + 1);
  std::vector<int> seen(inst.num_products(), 0);
  for (int t = 0; t <= inst.horizon(); ++t) {
    for (int i : part.levels[t]) {
      REQUIRE(inst.visibility_of(i) == t);
      ++seen[i];
    }
  }
  for (int c : seen) REQUIRE(c == 1);
}

TEST_CASE("forced low-price product drags every assortment") {
  const double m = 100.0;
  const int T = 5;
  Instance inst({1.0, 0.0}, {1.0, m}, {0, T}, T);
  const Plan plan = solve_apv(inst);
  for (const Assortment& s : plan.assortments) {
    CHECK(s.members() == std::vector<int>{0, 1});
  }
  CHECK(plan.objective == doctest::Approx(T / (2.0 + m)).epsilon(1e-12));
}

TEST_CASE("no floors means the unconstrained optimum everywhere") {
  Instance inst = gen_random(6, 4, 11);
  Instance relaxed(inst.prices(), inst.weights(),
                   std::vector<int>(inst.num_products(), 0), inst.horizon());
  const Plan plan = solve_apv(relaxed);
  const ExpandedResult best = unconstrained_optimum(relaxed);
  for (const Assortment& s : plan.assortments) {
    CHECK(s.members() == best.expanded_set.members());
  }
  CHECK(plan.objective ==
        doctest::Approx(relaxed.horizon() * best.expanded_revenue).epsilon(1e-12));
}

TEST_CASE("matches exhaustive search on small instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int T = 1 + static_cast<int>((seed / 4) % 3);
    Instance inst = gen_random(n, T, seed);
    const Plan fast = solve_apv(inst);
    const Plan slow = brute_force_apv(inst);
    CAPTURE(seed);
    check_feasible_and_nested(inst, fast);
    REQUIRE(fast.objective == doctest::Approx(slow.objective).epsilon(1e-9));
  }
}

TEST_CASE("two-customer example agrees with enumeration") {
  Instance inst({1.0, 0.0}, {1.0, 3.0}, {0, 2}, 2);
  const Plan slow = brute_force_apv(inst);
  const Plan fast = solve_apv(inst);
  CHECK(slow.objective == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(fast.objective == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("brute force handles the forced singleton") {
  Instance inst({2.5}, {0.5}, {1}, 1);
  const Plan plan = brute_force_apv(inst);
  REQUIRE(plan.assortments.size() == 1);
  CHECK(plan.assortments[0].members() == std::vector<int>{0});
  CHECK(plan.objective ==
        doctest::Approx(2.5 * 0.5 / 1.5).epsilon(1e-12));
}

TEST_CASE("brute force guard") {
  Instance inst = gen_random(6, 3, 1);  // 18 cells
  CHECK_THROWS_AS(brute_force_apv(inst), Error);
  try {
    brute_force_apv(inst);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_large);
  }
}

TEST_CASE("candidate inspections stay linear") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);
    const int T = 1 + static_cast<int>(seed % 7);
    Instance inst = gen_random(n, T, seed + 1000);
    SolveApvStats stats;
    solve_apv(inst, &stats);
    CAPTURE(n);
    CAPTURE(T);
    REQUIRE(stats.candidate_inspections <= n + 2 * T);
  }
}

TEST_CASE("objective equals the sum of per-customer revenues") {
  Instance inst = gen_random(5, 4, 77);
  const Plan plan = solve_apv(inst);
  double total = 0.0;
  for (const Assortment& s : plan.assortments) total += revenue(inst, s);
  CHECK(plan.objective == doctest::Approx(total).epsilon(1e-9));
  check_feasible_and_nested(inst, plan);
}
