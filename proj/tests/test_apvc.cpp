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
#include <numeric>

#include "visplan/apv.hpp"
#include "visplan/apvc.hpp"
#include "visplan/instgen.hpp"
#include "visplan/mnl.hpp"

using namespace visplan;

namespace {

Instance discretized_instance(const Instance& inst,
                              const DiscretizedInstance& disc) {
  return Instance(std::vector<double>(inst.num_products(), 1.0),
                  disc.rounded_weight, inst.visibility(), inst.horizon(),
                  inst.cardinality_cap());
}

void require_feasible(const Instance& inst, const Plan& plan) {
  REQUIRE(static_cast<int>(plan.assortments.size()) == inst.horizon());
  for (const Assortment& s : plan.assortments) {
    REQUIRE(s.size() <= *inst.cardinality_cap());
  }
  for (int i = 0; i < inst.num_products(); ++i) {
    int shown = 0;
    for (const Assortment& s : plan.assortments) shown += s.contains(i);
    REQUIRE(shown >= inst.visibility_of(i));
  }
}

}  // namespace

TEST_CASE("cap feasibility by max-flow") {
  CHECK(check_feasibility(Instance({1, 1, 1}, {1, 1, 1}, {1, 1, 1}, 1, 3)));
  CHECK_FALSE(
      check_feasibility(Instance({1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 1, 3)));
  CHECK_THROWS_AS(check_feasibility(Instance({1.0}, {1.0}, {0}, 1)), Error);

  // Counting argument oracle: feasible iff the floors fit into k*T slots.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    const int T = 1 + static_cast<int>((seed / 6) % 4);
    const int k = 1 + static_cast<int>(seed % 3);
    Instance inst = gen_random(n, T, seed, PriceMode::general, k);
    long long total = 0;
    for (int i = 0; i < n; ++i) total += inst.visibility_of(i);
    CAPTURE(seed);
    REQUIRE(check_feasibility(inst) ==
            (total <= static_cast<long long>(k) * T));
  }
}

TEST_CASE("gadgets are always cap-feasible") {
  CHECK(check_feasibility(gen_3partition({1, 1, 1})));
  CHECK(check_feasibility(gen_3partition({1, 2, 3, 1, 2, 3})));
}

TEST_CASE("capped brute force on the unit gadget") {
  const Plan plan = brute_force_apvc(gen_3partition({1, 1, 1}));
  CHECK(plan.objective == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("loose cap reduces to the uncapped brute force") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int T = 1 + static_cast<int>(seed % 3);
    Instance capped = gen_random(n, T, seed, PriceMode::general, n);
    const Plan a = brute_force_apvc(capped);
    Instance uncapped(capped.prices(), capped.weights(), capped.visibility(), T);
    const Plan b = brute_force_apv(uncapped);
    CAPTURE(seed);
    REQUIRE(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
  }
}

TEST_CASE("tight cap forces the alternating plan") {
  Instance inst({1.0, 1.0}, {1.0, 2.0}, {1, 1}, 2, 1);
  const Plan plan = brute_force_apvc(inst);
  CHECK(plan.objective == doctest::Approx(2.0 / 3.0 + 0.5).epsilon(1e-12));
}

TEST_CASE("capped brute force reports infeasibility and guards size") {
  CHECK_THROWS_AS(
      brute_force_apvc(Instance({1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 1, 3)),
      Error);
  Instance big = gen_random(14, 6, 3, PriceMode::general, 7);
  CHECK_THROWS_AS(brute_force_apvc(big), Error);
}

TEST_CASE("weight rounding cases") {
  Instance inst({1, 1, 1}, {5.0, 0.01, 0.05}, {0, 0, 0}, 1, 1);
  const DiscretizedInstance disc = discretize(inst, 0.5);
  CHECK(disc.rounded_weight[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(disc.weight_class[0] == disc.num_weight_classes - 1);
  CHECK(disc.rounded_weight[1] == 0.01);
  CHECK(disc.weight_class[1] == 0);
  // 0.03125 * 1.5 = 0.046875 <= 0.05 < 0.0703125, so the grid point below
  // 0.05 is 0.046875.
  CHECK(disc.rounded_weight[2] == doctest::Approx(0.046875).epsilon(1e-12));
  CHECK(disc.weight_class[2] == 2);
  CHECK(disc.count_cap == 64);
}

TEST_CASE("rounded weights stay within a (1+eps) factor") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random(6, 2, seed, PriceMode::equal, 3);
    for (double eps : {0.5, 0.75}) {
      const DiscretizedInstance disc = discretize(inst, eps);
      const double eps5 = std::pow(eps, 5);
      for (int i = 0; i < 6; ++i) {
        const double v = inst.weight(i);
        const double r = disc.rounded_weight[i];
        if (v >= 1.0 / eps) {
          REQUIRE(r == 1.0 / eps);
        } else if (v < eps5) {
          REQUIRE(r == v);
          REQUIRE(disc.weight_class[i] == 0);
        } else {
          REQUIRE(r <= v);
          REQUIRE(v <= (1.0 + eps) * r * (1 + 1e-12));
          REQUIRE(disc.weight_class[i] >= 1);
        }
      }
      // Same class (above 0) means same rounded weight.
      for (int q = 1; q < disc.num_weight_classes; ++q) {
        for (std::size_t j = 1; j < disc.class_members[q].size(); ++j) {
          REQUIRE(disc.rounded_weight[disc.class_members[q][j]] ==
                  disc.rounded_weight[disc.class_members[q][0]]);
        }
      }
    }
  }
}

TEST_CASE("discretize preconditions") {
  Instance unequal({2.0, 1.0}, {1.0, 1.0}, {0, 0}, 1, 1);
  CHECK_THROWS_AS(discretize(unequal, 0.5), Error);
  Instance equal({1.0}, {1.0}, {0}, 1, 1);
  CHECK_THROWS_AS(discretize(equal, 0.0), Error);
  CHECK_THROWS_AS(discretize(equal, 1.0), Error);
}

TEST_CASE("sandwich is exact when no weight moves") {
  {
    // All weights below eps^5 stay put.
    Instance inst({1, 1}, {0.01, 0.02}, {1, 1}, 2, 2);
    const DiscretizedInstance disc = discretize(inst, 0.5);
    const Plan plan = solve_apv(inst);
    const SandwichResult r = sandwich_check(inst, disc, plan);
    CHECK(r.discretized == r.actual);
  }
  {
    // A weight exactly at 1/eps rounds to itself.
    Instance inst({1.0}, {2.0}, {1}, 1, 1);
    const DiscretizedInstance disc = discretize(inst, 0.5);
    Plan plan;
    plan.assortments = {Assortment(inst, {0})};
    plan.objective = revenue(inst, plan.assortments[0]);
    const SandwichResult r = sandwich_check(inst, disc, plan);
    CHECK(r.discretized == r.actual);
  }
}

TEST_CASE("sandwich holds on random plans") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random(4, 3, seed, PriceMode::equal, 2);
    const DiscretizedInstance disc = discretize(inst, 0.75);
    const Plan plan = solve_apv(inst);  // any plan will do
    const SandwichResult r = sandwich_check(inst, disc, plan);
    CHECK(r.discretized <= r.actual + 1e-9);
    CHECK(r.actual <= (1.0 + 0.75) * r.discretized + 1e-9);
  }
}

TEST_CASE("guess stream is finite and counts match the formula") {
  Instance inst = gen_random(3, 2, 7, PriceMode::equal, 2);
  const DiscretizedInstance disc = discretize(inst, 0.75);
  GuessEnumerator en(disc, 2);
  const auto pairs =
      static_cast<std::uint64_t>(en.num_customer_classes()) * en.patterns().size();
  CHECK(en.total_guesses() == pairs * (pairs + 1) / 2);

  std::uint64_t count = 0;
  Guess g;
  while (en.next(g)) {
    ++count;
    REQUIRE(g.customer_class.size() == 2);
    REQUIRE(g.customer_pattern.size() == 2);
    REQUIRE(g.weight_floor.size() == 2);
    for (int t = 0; t < 2; ++t) {
      REQUIRE(static_cast<int>(g.customer_pattern[t].counts.size()) ==
              disc.num_weight_classes);
    }
  }
  CHECK(count == en.total_guesses());
}

TEST_CASE("one-customer stream has one guess per pair") {
  Instance inst({1.0}, {1.0}, {1}, 1, 1);
  const DiscretizedInstance disc = discretize(inst, 0.5);
  GuessEnumerator en(disc, 1);
  std::uint64_t count = 0;
  Guess g;
  while (en.next(g)) ++count;
  CHECK(count ==
        static_cast<std::uint64_t>(en.num_customer_classes()) *
            en.patterns().size());
  CHECK(count == en.total_guesses());
}

TEST_CASE("guess budget is a hard error") {
  Instance inst = gen_random(3, 2, 7, PriceMode::equal, 2);
  const DiscretizedInstance disc = discretize(inst, 0.75);
  try {
    GuessEnumerator en(disc, 2, 1);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
    CHECK(std::string(e.what()).find("exceed") != std::string::npos);
  }
}

TEST_CASE("trivial relaxation: everything light and empty") {
  Instance inst({1, 1}, {1.0, 2.0}, {0, 0}, 2, 1);
  const DiscretizedInstance disc = discretize(inst, 0.75);
  Guess guess;
  for (int t = 0; t < 2; ++t) {
    guess.customer_class.push_back(0);
    guess.customer_pattern.push_back(
        PackingPattern{std::vector<int>(disc.num_weight_classes, 0)});
    guess.weight_floor.push_back(0.0);
  }
  const lp::LpSolution sol = lp::solve_lp(build_relaxation(inst, disc, guess));
  REQUIRE(sol.status == lp::LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(0.0));
  for (double v : sol.x) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("relaxation row count follows the build rule") {
  Instance inst = gen_random(3, 2, 11, PriceMode::equal, 2);
  const DiscretizedInstance disc = discretize(inst, 0.5);
  GuessEnumerator en(disc, 2);
  Guess g;
  REQUIRE(en.next(g));
  const lp::LpModel model = build_relaxation(inst, disc, g);
  int nonempty = 0;
  for (const auto& members : disc.class_members) nonempty += !members.empty();
  int light = 0;
  for (int c : g.customer_class) light += c == 0;
  const int n = 3, T = 2;
  CHECK(model.num_vars == n * T);
  CHECK(static_cast<int>(model.rows.size()) ==
        n + T + T * nonempty + T + light);
}

TEST_CASE("the guess induced by an optimal plan is feasible and dominant") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int T = 1 + static_cast<int>(seed % 2);
    const int k = 1 + static_cast<int>(seed % 2);
    Instance inst = gen_random(n, T, seed + 21, PriceMode::equal, k);
    if (!check_feasibility(inst)) continue;
    for (double eps : {0.5, 0.75}) {
      const DiscretizedInstance disc = discretize(inst, eps);
      const Instance hat = discretized_instance(inst, disc);
      const Plan opt = brute_force_apvc(hat);
      const Guess truth = induced_guess(disc, opt);
      const lp::LpSolution sol =
          lp::solve_lp(build_relaxation(inst, disc, truth));
      CAPTURE(seed);
      CAPTURE(eps);
      REQUIRE(sol.status == lp::LpStatus::optimal);
      double light_weight = 0.0;
      for (int t = 0; t < T; ++t) {
        if (truth.customer_class[t] != 0) continue;
        for (int i : opt.assortments[t].members()) {
          light_weight += disc.rounded_weight[i];
        }
      }
      REQUIRE(sol.value >= light_weight - 1e-9);
    }
  }
}

TEST_CASE("rounding graph structure") {
  DiscretizedInstance disc;
  disc.epsilon = 0.5;
  disc.num_weight_classes = 2;  // one tiny class, one unit class
  disc.count_cap = 64;
  disc.rounded_weight = {0.01, 1.0, 1.0};
  disc.weight_class = {0, 1, 1};
  disc.class_members = {{0}, {1, 2}};

  Guess guess;
  const int T = 2;
  for (int t = 0; t < T; ++t) {
    guess.customer_class.push_back(0);
    guess.customer_pattern.push_back(PackingPattern{{1, 1}});
    guess.weight_floor.push_back(0.0);
  }
  std::vector<double> x = {1.0, 0.5, 0.5, 0.0, 0.5, 0.5};
  const RoundingGraph rg = build_rounding_graph(disc, guess, x, T);
  CHECK(rg.graph.num_left == 3);
  CHECK(rg.graph.num_right == 2 * T);  // all bounded, one node per class
  CHECK(rg.graph.edges.size() == 3 * T);

  // Fractional degree of each (customer, class) node equals the pattern.
  std::vector<double> degree(rg.graph.num_right, 0.0);
  for (const auto& e : rg.graph.edges) degree[e.right] += e.value;
  for (int t = 0; t < T; ++t) {
    CHECK(degree[2 * t + 0] == doctest::Approx(x[t * 3 + 0]));
    CHECK(degree[2 * t + 1] == doctest::Approx(1.0));
  }

  // Integral input rounds to itself.
  std::vector<double> integral = {1, 0, 1, 0, 1, 0};
  const RoundingGraph rgi = build_rounding_graph(disc, guess, integral, T);
  std::mt19937_64 rng(3);
  const auto bits = dependent_round(rgi.graph, rng);
  for (std::size_t e = 0; e < bits.size(); ++e) {
    CHECK(static_cast<double>(bits[e]) == integral[e]);
  }
}

TEST_CASE("scheme matches the exact solver when the cap is loose") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int T = 1 + static_cast<int>(seed % 2);
    Instance inst = gen_random(n, T, seed + 400, PriceMode::equal, n);
    const Plan exact = solve_apv(
        Instance(inst.prices(), inst.weights(), inst.visibility(), T));
    PtasOptions options;
    options.epsilon = 0.75;
    options.seed = seed;
    options.repetitions = 10;
    const Plan approx = solve_apvc_ptas(inst, options);
    CAPTURE(seed);
    require_feasible(inst, approx);
    REQUIRE(approx.objective <= exact.objective + 1e-9);
    REQUIRE(approx.objective >=
            (1.0 - 3.0 * options.epsilon) * exact.objective - 1e-9);
  }
}

TEST_CASE("scheme finds the forced alternating optimum") {
  Instance inst({1.0, 1.0}, {1.0, 2.0}, {1, 1}, 2, 1);
  PtasOptions options;
  options.epsilon = 0.75;
  options.seed = 17;
  options.repetitions = 20;
  const Plan plan = solve_apvc_ptas(inst, options);
  CHECK(sales_objective(inst, plan) ==
        doctest::Approx(7.0 / 6.0).epsilon(1e-9));
  const Plan oracle = brute_force_apvc(inst);
  CHECK(plan.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
}

TEST_CASE("scheme hits the gadget threshold") {
  Instance gadget = gen_3partition({1, 1, 1});
  PtasOptions options;
  options.epsilon = 0.5;
  options.seed = 5;
  options.repetitions = 10;
  const Plan plan = solve_apvc_ptas(gadget, options);
  CHECK(plan.objective == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("scheme is deterministic per seed and validates input") {
  Instance inst = gen_random(3, 2, 9, PriceMode::equal, 2);
  PtasOptions options;
  options.epsilon = 0.5;
  options.seed = 123;
  options.repetitions = 5;
  const Plan a = solve_apvc_ptas(inst, options);
  const Plan b = solve_apvc_ptas(inst, options);
  CHECK(a.objective == b.objective);
  for (int t = 0; t < 2; ++t) {
    CHECK(a.assortments[t].members() == b.assortments[t].members());
  }

  Instance no_cap = gen_random(3, 2, 9, PriceMode::equal);
  CHECK_THROWS_AS(solve_apvc_ptas(no_cap, options), Error);
  Instance unequal = gen_random(3, 2, 9, PriceMode::general, 2);
  CHECK_THROWS_AS(solve_apvc_ptas(unequal, options), Error);
  Instance impossible({1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 1, 3);
  CHECK_THROWS_AS(solve_apvc_ptas(impossible, options), Error);
}

TEST_CASE("rounded plans are feasible and sandwiched across seeds") {
  Instance inst = gen_random(4, 2, 31, PriceMode::equal, 2);
  REQUIRE(check_feasibility(inst));
  PtasSolver solver(inst, 0.5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Plan plan = solver.run(seed, 2);
    require_feasible(inst, plan);
    const SandwichResult r = sandwich_check(inst, solver.discretized(), plan);
    REQUIRE(r.discretized <= r.actual + 1e-9);
    REQUIRE(r.actual <= 1.5 * r.discretized + 1e-9);
  }
}

TEST_CASE("expected quality against the discretized optimum") {
  std::uint64_t seed = 77;
  Instance inst = gen_random(3, 2, seed, PriceMode::equal, 2);
  while (!check_feasibility(inst)) {
    inst = gen_random(3, 2, ++seed, PriceMode::equal, 2);
  }
  const double eps = 0.75;
  PtasSolver solver(inst, eps);
  const Instance hat = discretized_instance(inst, solver.discretized());
  const double opt_hat = sales_objective(hat, brute_force_apvc(hat));

  const int seeds = 200;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const double value = sales_objective(inst, solver.run(s, 1));
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / seeds;
  const double var = std::max(0.0, sum_sq / seeds - mean * mean);
  const double stderr_mean = std::sqrt(var / seeds);
  CHECK(mean >= (1.0 - 3.0 * eps) * opt_hat - 3.0 * stderr_mean);
}

TEST_CASE("star patterns and unbounded customers at coarse epsilon") {
  // With eps = 0.9 the count cap is ceil(1/0.9^6) = 3, so four same-class
  // products make star patterns reachable and customers unbounded.
  const double eps = 0.9;
  Instance inst({1, 1, 1, 1}, {1.0, 1.0, 1.0, 1.0}, {1, 1, 1, 1}, 2, 4);
  REQUIRE(check_feasibility(inst));
  const DiscretizedInstance disc = discretize(inst, eps);
  REQUIRE(disc.count_cap < 4);

  GuessEnumerator en(disc, 2);
  bool saw_star = false;
  for (const PackingPattern& p : en.patterns()) {
    for (int c : p.counts) saw_star = saw_star || c == kStarCount;
  }
  REQUIRE(saw_star);

  // The guess induced by offering everything to everyone is a star guess
  // whose relaxation is feasible, and its customers are unbounded.
  Plan full;
  full.assortments.assign(2, Assortment(inst, {0, 1, 2, 3}));
  full.objective = 2.0 * revenue(inst, full.assortments[0]);
  const Guess truth = induced_guess(disc, full);
  bool truth_has_star = false;
  for (const PackingPattern& p : truth.customer_pattern) {
    for (int c : p.counts) truth_has_star = truth_has_star || c == kStarCount;
  }
  REQUIRE(truth_has_star);
  const lp::LpSolution sol = lp::solve_lp(build_relaxation(inst, disc, truth));
  REQUIRE(sol.status == lp::LpStatus::optimal);
  const RoundingGraph rg = build_rounding_graph(disc, truth, sol.x, 2);
  CHECK(rg.customer_bounded[0] == 0);
  CHECK(rg.customer_bounded[1] == 0);
  CHECK(rg.graph.num_right == 2);  // one node per unbounded customer

  // End to end: plans stay feasible. At this coarse epsilon the star row
  // only forces count_cap + 1 = 3 of the 4 products onto each (heavy,
  // objective-less) customer, so the scheme may legitimately stop at
  // V = 3 per customer while the exact optimum offers all 4.
  PtasOptions options;
  options.epsilon = eps;
  options.seed = 2;
  options.repetitions = 10;
  const Plan plan = solve_apvc_ptas(inst, options);
  require_feasible(inst, plan);
  const Plan oracle = brute_force_apvc(inst);
  CHECK(oracle.objective == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(plan.objective <= oracle.objective + 1e-9);
  CHECK(plan.objective >= 2.0 * 3.0 / 4.0 - 1e-9);
}

TEST_CASE("sales objective shapes") {
  Instance inst({1.0, 1.0}, {2.0, 3.0}, {0, 0}, 3, 2);
  Plan empty;
  empty.assortments.assign(3, Assortment());
  CHECK(sales_objective(inst, empty) == 0.0);

  Plan singles;
  for (int t = 0; t < 3; ++t) singles.assortments.emplace_back(inst, std::vector<int>{0});
  CHECK(sales_objective(inst, singles) ==
        doctest::Approx(3.0 * 2.0 / 3.0).epsilon(1e-12));

  // Equal unit prices: sales objective equals summed revenue.
  Plan plan = solve_apv(Instance(inst.prices(), inst.weights(), inst.visibility(), 3));
  double rev_total = 0.0;
  for (const Assortment& s : plan.assortments) rev_total += revenue(inst, s);
  CHECK(sales_objective(inst, plan) == doctest::Approx(rev_total).epsilon(1e-9));
}
