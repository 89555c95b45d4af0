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

#ifndef VISPLAN_APVC_HPP
#define VISPLAN_APVC_HPP

#include <cstdint>
#include <vector>

#include "visplan/instance.hpp"
#include "visplan/lp.hpp"
#include "visplan/rounding.hpp"

namespace visplan {

/// Whether any plan can satisfy the visibility floors under the per-customer
/// cardinality cap. Decided by max-flow on source -> products (capacity
/// visibility floor) -> customers (capacity 1) -> sink (capacity cap);
/// feasible iff the flow saturates all floors.
/// Requires a cardinality cap (Error(Errc::precondition) otherwise).
bool check_feasibility(const Instance& instance);

/// Exact optimum over all cardinality-capped feasible plans, by guarded
/// enumeration with infeasibility pruning. Test oracle only.
/// Throws Errc::too_large beyond the guard, Errc::infeasible when no plan
/// satisfies the floors.
Plan brute_force_apvc(const Instance& instance);

/// Sales objective of a plan: sum over customers of V(S_t) / (1 + V(S_t)),
/// evaluated with the instance's true weights. Equals the expected revenue
/// when all prices are 1.
double sales_objective(const Instance& instance, const Plan& plan);

// ---------------------------------------------------------------------------
// Weight discretization
// ---------------------------------------------------------------------------

/// The equal-price instance with its weights rounded down onto a geometric
/// grid. Weights at least 1/eps collapse to 1/eps (class Q); weights below
/// eps^5 stay exact (class 0); in between, weights round down to
/// eps^5 (1+eps)^(q-1), losing at most a (1+eps) factor. All products in a
/// class q >= 1 share one weight.
struct DiscretizedInstance {
  double epsilon = 0.0;
  int num_weight_classes = 0;  // Q + 1, classes indexed 0..Q
  int count_cap = 0;           // ceil(1/eps^6); "more than this" is the star

  std::vector<double> rounded_weight;           // per product
  std::vector<int> weight_class;                // per product, 0..Q
  std::vector<std::vector<int>> class_members;  // products per class
};

/// Requires equal prices (Errc::unsupported) and 0 < eps < 1
/// (Errc::precondition).
DiscretizedInstance discretize(const Instance& instance, double epsilon);

/// Plan objective before and after discretization. Verifies the sandwich
/// discretized <= actual <= (1+eps) * discretized (Errc::numeric on
/// violation) and returns both values.
struct SandwichResult {
  double discretized = 0.0;
  double actual = 0.0;
};
SandwichResult sandwich_check(const Instance& instance,
                              const DiscretizedInstance& disc,
                              const Plan& plan);

// ---------------------------------------------------------------------------
// Guessing
// ---------------------------------------------------------------------------

/// Marker for a packing-pattern entry exceeding the count cap.
inline constexpr int kStarCount = -1;

/// Per-customer product counts by weight class; kStarCount encodes "strictly
/// more than the count cap".
struct PackingPattern {
  std::vector<int> counts;  // size num_weight_classes
};

/// One guess, materialized as a per-customer assignment. Customer classes:
/// 0 is light (assortment weight below eps), 1..L are the geometric medium
/// classes, L+1 is heavy (weight at least 1/eps). weight_floor holds the
/// guessed lower bound on each customer's discretized assortment weight.
struct Guess {
  std::vector<int> customer_class;
  std::vector<PackingPattern> customer_pattern;
  std::vector<double> weight_floor;
};

inline constexpr std::uint64_t kDefaultGuessBudget = 1'000'000;

/// Streams every assignment of customer counts to (customer class, packing
/// pattern) pairs summing to the horizon. Customers are interchangeable, so
/// each count vector is materialized by assigning customers to pairs in
/// order. Only realizable patterns are generated: class counts never exceed
/// the class size, and the star requires more products than the count cap.
///
/// The constructor computes the total number of guesses and throws
/// Error(Errc::budget_exceeded) (message includes the count) when it tops
/// the budget.
class GuessEnumerator {
 public:
  GuessEnumerator(const DiscretizedInstance& disc, int horizon,
                  std::uint64_t budget = kDefaultGuessBudget);

  std::uint64_t total_guesses() const { return total_; }
  const std::vector<PackingPattern>& patterns() const { return patterns_; }
  int medium_classes() const { return medium_classes_; }  // L
  int num_customer_classes() const { return medium_classes_ + 2; }
  double class_weight_floor(int customer_class) const;

  /// Fills the next guess; false once the stream is exhausted.
  bool next(Guess& out);

 private:
  int horizon_;
  double epsilon_;
  int medium_classes_;
  std::vector<PackingPattern> patterns_;
  int num_pairs_ = 0;
  std::vector<int> composition_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t total_ = 0;
};

/// The guess a known plan induces: classify each customer by discretized
/// assortment weight and record its per-class product counts.
Guess induced_guess(const DiscretizedInstance& disc, const Plan& plan);

// ---------------------------------------------------------------------------
// Relaxation and rounding graph
// ---------------------------------------------------------------------------

/// LP relaxation of the guessed planning problem over offer indicators
/// x[i,t] in [0,1] (column t*n + i). Objective: discretized assortment
/// weight of the light customers. Constraints: visibility floors, the
/// cardinality cap, per-class counts pinned to the guessed pattern (or
/// pushed above the count cap for stars), the guessed weight floors, and
/// the light-weight ceiling.
lp::LpModel build_relaxation(const Instance& instance,
                             const DiscretizedInstance& disc,
                             const Guess& guess);

/// Rounding input built from a fractional relaxation solution: products on
/// the left; per customer either one node (some medium-or-above class count
/// is a star) or one node per weight class. Edge e carries x[i,t] for
/// (product_of[e], customer_of[e]).
struct RoundingGraph {
  FractionalBipartite graph;
  std::vector<int> product_of;
  std::vector<int> customer_of;
  std::vector<char> customer_bounded;  // per customer
};
RoundingGraph build_rounding_graph(const DiscretizedInstance& disc,
                                   const Guess& guess,
                                   const std::vector<double>& x, int horizon);

// ---------------------------------------------------------------------------
// The approximation scheme
// ---------------------------------------------------------------------------

struct PtasOptions {
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  int repetitions = 20;
  std::uint64_t guess_budget = kDefaultGuessBudget;
};

/// Guess-sweep state reusable across seeds: the relaxations of all guesses
/// are solved once, distinct fractional solutions are kept, and run() only
/// repeats the randomized rounding stage.
class PtasSolver {
 public:
  PtasSolver(const Instance& instance, double epsilon,
             std::uint64_t guess_budget = kDefaultGuessBudget);

  const DiscretizedInstance& discretized() const { return disc_; }
  std::uint64_t guesses_enumerated() const { return guesses_enumerated_; }
  int num_cached_relaxations() const { return static_cast<int>(cached_.size()); }

  /// Best plan over all cached relaxation solutions and `repetitions`
  /// independent roundings each, ranked by the true (undiscretized) sales
  /// objective; ties keep the lowest guess index. Deterministic in `seed`.
  Plan run(std::uint64_t seed, int repetitions) const;

 private:
  struct Cached {
    Guess guess;
    std::vector<double> x;
    std::uint64_t guess_index;
  };

  Instance instance_;
  DiscretizedInstance disc_;
  std::vector<Cached> cached_;
  std::uint64_t guesses_enumerated_ = 0;
};

/// Cardinality-capped planning for equal prices: discretize, enumerate
/// guesses, solve each relaxation, round the fractional solutions, and keep
/// the best feasible plan under the true objective. Every returned plan
/// satisfies the visibility floors and the cardinality cap.
///
/// Errors: missing cap / bad epsilon (Errc::precondition), unequal prices
/// (Errc::unsupported), infeasible instance (Errc::infeasible), guess count
/// over budget (Errc::budget_exceeded).
Plan solve_apvc_ptas(const Instance& instance, const PtasOptions& options);

}  // namespace visplan

#endif  // VISPLAN_APVC_HPP
