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

#include "visplan/apvc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "visplan/apv.hpp"
#include "visplan/mnl.hpp"

namespace visplan {
namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t guess_index,
                       std::uint64_t repetition) {
  return splitmix64(splitmix64(splitmix64(seed) ^ guess_index) ^ repetition);
}

struct Dinic {
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;

  explicit Dinic(int nodes) : g(nodes), level(nodes), iter(nodes) {}

  void add_edge(int from, int to, long long cap) {
    g[from].push_back({to, cap, static_cast<int>(g[to].size())});
    g[to].push_back({from, 0, static_cast<int>(g[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::vector<int> queue{s};
    level[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (const Edge& e : g[v]) {
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level[t] >= 0;
  }

  long long dfs(int v, int t, long long f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
      Edge& e = g[v][i];
      if (e.cap > 0 && level[v] < level[e.to]) {
        const long long d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) {
        flow += f;
      }
    }
    return flow;
  }
};

// C(T + G - 1, T), saturating.
std::uint64_t multiset_count(std::uint64_t pairs, std::uint64_t horizon) {
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= horizon; ++i) {
    value = value * (pairs - 1 + i) / i;
    if (value > kU64Max) return kU64Max;
  }
  return static_cast<std::uint64_t>(value);
}

// Lexicographic successor of a weak composition with fixed total.
bool next_composition(std::vector<int>& c) {
  const int g = static_cast<int>(c.size());
  int j = -1;
  for (int i = g - 2; i >= 0; --i) {
    if (c[i] > 0) {
      j = i;
      break;
    }
  }
  if (j < 0) return false;
  int tail = 0;
  for (int i = j + 1; i < g; ++i) {
    tail += c[i];
    c[i] = 0;
  }
  c[j] -= 1;
  c[j + 1] = tail + 1;
  return true;
}

// Smallest L with eps (1+eps)^L >= 1/eps.
int medium_class_count(double eps) {
  int l = 0;
  double w = eps;
  while (w < 1.0 / eps) {
    w *= 1.0 + eps;
    ++l;
  }
  return l;
}

double class_floor(double eps, int medium_classes, int customer_class) {
  if (customer_class == 0) return 0.0;
  if (customer_class == medium_classes + 1) return 1.0 / eps;
  double w = eps;
  for (int i = 1; i < customer_class; ++i) w *= 1.0 + eps;
  return w;
}

int classify_customer(double eps, int medium_classes, double weight) {
  if (weight < eps) return 0;
  if (weight >= 1.0 / eps) return medium_classes + 1;
  int cls = 1;
  double w = eps;
  while (cls < medium_classes && w * (1.0 + eps) <= weight) {
    w *= 1.0 + eps;
    ++cls;
  }
  return cls;
}

}  // namespace

bool check_feasibility(const Instance& instance) {
  if (!instance.cardinality_cap()) {
    throw Error(Errc::precondition,
                "feasibility check needs a cardinality cap");
  }
  const int n = instance.num_products();
  const int T = instance.horizon();
  const int k = *instance.cardinality_cap();
  const int source = 0, sink = n + T + 1;
  Dinic flow(n + T + 2);
  long long demand = 0;
  for (int i = 0; i < n; ++i) {
    flow.add_edge(source, 1 + i, instance.visibility_of(i));
    demand += instance.visibility_of(i);
    for (int t = 0; t < T; ++t) {
      flow.add_edge(1 + i, 1 + n + t, 1);
    }
  }
  for (int t = 0; t < T; ++t) {
    flow.add_edge(1 + n + t, sink, k);
  }
  return flow.max_flow(source, sink) == demand;
}

Plan brute_force_apvc(const Instance& instance) {
  if (!instance.cardinality_cap()) {
    throw Error(Errc::precondition, "brute force needs a cardinality cap");
  }
  const int n = instance.num_products();
  const int T = instance.horizon();
  const int k = std::min(*instance.cardinality_cap(), n);

  // Work estimate: number of admissible offer sets per customer, raised to
  // the horizon. The classic cell guard admits small generic instances; the
  // estimate guard admits the structured reduction gadgets, whose pruned
  // search stays small even though n*T does not.
  double mask_count = 0.0;
  {
    double c = 1.0;
    for (int j = 0; j <= k; ++j) {
      mask_count += c;
      c = c * (n - j) / (j + 1);
    }
  }
  const double estimate = std::pow(mask_count, T);
  if (n * T > kBruteForceCellLimit &&
      (mask_count > double{1 << 20} || estimate > double{1 << 24})) {
    throw Error(Errc::too_large,
                "brute-force enumeration would visit about " +
                    std::to_string(estimate) + " plans");
  }

  std::vector<unsigned> masks;
  std::vector<double> mask_revenue;
  {
    std::vector<int> combo;
    auto emit = [&](unsigned mask) {
      double num = 0.0, den = 1.0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          num += instance.price(i) * instance.weight(i);
          den += instance.weight(i);
        }
      }
      masks.push_back(mask);
      mask_revenue.push_back(num / den);
    };
    // Subsets by cardinality 0..k.
    emit(0u);
    for (int j = 1; j <= k; ++j) {
      combo.resize(j);
      for (int i = 0; i < j; ++i) combo[i] = i;
      while (true) {
        unsigned mask = 0;
        for (int i : combo) mask |= 1u << i;
        emit(mask);
        int pos = j - 1;
        while (pos >= 0 && combo[pos] == n - j + pos) --pos;
        if (pos < 0) break;
        ++combo[pos];
        for (int i = pos + 1; i < j; ++i) combo[i] = combo[i - 1] + 1;
      }
    }
  }

  std::vector<int> shown(n, 0);
  std::vector<unsigned> chosen(T, 0), best_masks;
  double best = -1.0;
  int deficit_total = 0;
  for (int i = 0; i < n; ++i) deficit_total += instance.visibility_of(i);

  auto deficits_coverable = [&](int customers_left) {
    if (deficit_total > static_cast<long long>(customers_left) * k) return false;
    for (int i = 0; i < n; ++i) {
      if (instance.visibility_of(i) - shown[i] > customers_left) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, int t, double value) -> void {
    if (t == T) {
      if (deficit_total == 0 && value > best) {
        best = value;
        best_masks = chosen;
      }
      return;
    }
    if (!deficits_coverable(T - t)) return;
    for (std::size_t m = 0; m < masks.size(); ++m) {
      const unsigned mask = masks[m];
      chosen[t] = mask;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          if (++shown[i] <= instance.visibility_of(i)) --deficit_total;
        }
      }
      self(self, t + 1, value + mask_revenue[m]);
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          if (shown[i]-- <= instance.visibility_of(i)) ++deficit_total;
        }
      }
    }
  };
  search(search, 0, 0.0);

  if (best < 0.0) {
    throw Error(Errc::infeasible,
                "no plan satisfies the visibility floors under the cap");
  }
  Plan plan;
  plan.objective = best;
  plan.assortments.reserve(T);
  for (int t = 0; t < T; ++t) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (best_masks[t] & (1u << i)) members.push_back(i);
    }
    plan.assortments.emplace_back(instance, std::move(members));
  }
  return plan;
}

double sales_objective(const Instance& instance, const Plan& plan) {
  if (static_cast<int>(plan.assortments.size()) != instance.horizon()) {
    throw Error(Errc::precondition, "plan length does not match the horizon");
  }
  double total = 0.0;
  for (const Assortment& s : plan.assortments) {
    total += s.total_weight() / (1.0 + s.total_weight());
  }
  return total;
}

DiscretizedInstance discretize(const Instance& instance, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(Errc::precondition, "epsilon must lie strictly in (0, 1)");
  }
  if (!instance.prices_all_equal()) {
    throw Error(Errc::unsupported,
                "weight discretization is defined for equal prices only");
  }
  const double inv = 1.0 / epsilon;
  const double eps5 = std::pow(epsilon, 5);

  DiscretizedInstance disc;
  disc.epsilon = epsilon;
  disc.count_cap = static_cast<int>(std::ceil(std::pow(inv, 6) - 1e-9));

  int q_top = 1;
  {
    double w = eps5;
    while (w < inv) {
      w *= 1.0 + epsilon;
      ++q_top;
    }
  }
  disc.num_weight_classes = q_top + 1;
  disc.class_members.resize(disc.num_weight_classes);

  const int n = instance.num_products();
  disc.rounded_weight.resize(n);
  disc.weight_class.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = instance.weight(i);
    double rounded;
    int cls;
    if (v >= inv) {
      rounded = inv;
      cls = q_top;
    } else if (v < eps5) {
      rounded = v;
      cls = 0;
    } else {
      cls = 1;
      rounded = eps5;
      while (rounded * (1.0 + epsilon) <= v) {
        rounded *= 1.0 + epsilon;
        ++cls;
      }
    }
    disc.rounded_weight[i] = rounded;
    disc.weight_class[i] = cls;
    disc.class_members[cls].push_back(i);
  }
  return disc;
}

SandwichResult sandwich_check(const Instance& instance,
                              const DiscretizedInstance& disc,
                              const Plan& plan) {
  SandwichResult result;
  for (const Assortment& s : plan.assortments) {
    double rounded = 0.0, actual = 0.0;
    for (int i : s.members()) {
      rounded += disc.rounded_weight[i];
      actual += instance.weight(i);
    }
    result.discretized += rounded / (1.0 + rounded);
    result.actual += actual / (1.0 + actual);
  }
  const double slack =
      1e-9 * std::max({1.0, result.discretized, result.actual});
  if (result.discretized > result.actual + slack ||
      result.actual > (1.0 + disc.epsilon) * result.discretized + slack) {
    throw Error(Errc::numeric, "discretization sandwich violated");
  }
  return result;
}

GuessEnumerator::GuessEnumerator(const DiscretizedInstance& disc, int horizon,
                                 std::uint64_t budget)
    : horizon_(horizon), epsilon_(disc.epsilon) {
  if (horizon_ < 1) {
    throw Error(Errc::precondition, "horizon must be positive");
  }
  medium_classes_ = medium_class_count(epsilon_);

  // Realizable packing patterns: per class, any count up to min(cap, size);
  // the star needs the class to hold more than `count_cap` products.
  const int classes = disc.num_weight_classes;
  std::vector<int> current(classes, 0);
  auto emit = [&](auto&& self, int q) -> void {
    if (q == classes) {
      patterns_.push_back(PackingPattern{current});
      if (patterns_.size() > budget) {
        throw Error(Errc::budget_exceeded,
                    "guess budget exceeded: more than " +
                        std::to_string(budget) + " packing patterns");
      }
      return;
    }
    const int size = static_cast<int>(disc.class_members[q].size());
    const int top = std::min(size, disc.count_cap);
    for (int c = 0; c <= top; ++c) {
      current[q] = c;
      self(self, q + 1);
    }
    if (size > disc.count_cap) {
      current[q] = kStarCount;
      self(self, q + 1);
    }
    current[q] = 0;
  };
  emit(emit, 0);

  num_pairs_ = num_customer_classes() * static_cast<int>(patterns_.size());
  total_ = multiset_count(num_pairs_, horizon_);
  if (total_ > budget) {
    throw Error(Errc::budget_exceeded,
                "guess count " + std::to_string(total_) +
                    " exceeds the budget of " + std::to_string(budget));
  }
  composition_.assign(num_pairs_, 0);
  composition_[0] = horizon_;
}

double GuessEnumerator::class_weight_floor(int customer_class) const {
  return class_floor(epsilon_, medium_classes_, customer_class);
}

bool GuessEnumerator::next(Guess& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
  } else if (!next_composition(composition_)) {
    done_ = true;
    return false;
  }
  out.customer_class.clear();
  out.customer_pattern.clear();
  out.weight_floor.clear();
  const int num_patterns = static_cast<int>(patterns_.size());
  for (int pair = 0; pair < num_pairs_; ++pair) {
    const int count = composition_[pair];
    if (count == 0) continue;
    const int cls = pair / num_patterns;
    const int pattern = pair % num_patterns;
    for (int c = 0; c < count; ++c) {
      out.customer_class.push_back(cls);
      out.customer_pattern.push_back(patterns_[pattern]);
      out.weight_floor.push_back(class_weight_floor(cls));
    }
  }
  return true;
}

Guess induced_guess(const DiscretizedInstance& disc, const Plan& plan) {
  const double eps = disc.epsilon;
  const int medium = medium_class_count(eps);
  Guess guess;
  for (const Assortment& s : plan.assortments) {
    double rounded = 0.0;
    std::vector<int> counts(disc.num_weight_classes, 0);
    for (int i : s.members()) {
      rounded += disc.rounded_weight[i];
      ++counts[disc.weight_class[i]];
    }
    for (int& c : counts) {
      if (c > disc.count_cap) c = kStarCount;
    }
    const int cls = classify_customer(eps, medium, rounded);
    guess.customer_class.push_back(cls);
    guess.customer_pattern.push_back(PackingPattern{std::move(counts)});
    guess.weight_floor.push_back(class_floor(eps, medium, cls));
  }
  return guess;
}

lp::LpModel build_relaxation(const Instance& instance,
                             const DiscretizedInstance& disc,
                             const Guess& guess) {
  if (!instance.cardinality_cap()) {
    throw Error(Errc::precondition, "relaxation needs a cardinality cap");
  }
  const int n = instance.num_products();
  const int T = instance.horizon();
  const int k = *instance.cardinality_cap();

  lp::LpModel model;
  for (int t = 0; t < T; ++t) {
    const bool light = guess.customer_class[t] == 0;
    for (int i = 0; i < n; ++i) {
      model.add_var(light ? disc.rounded_weight[i] : 0.0, 1.0);
    }
  }
  auto col = [n](int i, int t) { return t * n + i; };

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int t = 0; t < T; ++t) terms.emplace_back(col(i, t), 1.0);
    model.add_row(std::move(terms), lp::Sense::ge, instance.visibility_of(i));
  }
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) terms.emplace_back(col(i, t), 1.0);
    model.add_row(std::move(terms), lp::Sense::le, k);
  }
  for (int t = 0; t < T; ++t) {
    const PackingPattern& pattern = guess.customer_pattern[t];
    for (int q = 0; q < disc.num_weight_classes; ++q) {
      if (disc.class_members[q].empty()) continue;
      std::vector<std::pair<int, double>> terms;
      for (int i : disc.class_members[q]) terms.emplace_back(col(i, t), 1.0);
      if (pattern.counts[q] == kStarCount) {
        model.add_row(std::move(terms), lp::Sense::ge, disc.count_cap + 1);
      } else {
        model.add_row(std::move(terms), lp::Sense::eq, pattern.counts[q]);
      }
    }
  }
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) {
      terms.emplace_back(col(i, t), disc.rounded_weight[i]);
    }
    model.add_row(std::move(terms), lp::Sense::ge, guess.weight_floor[t]);
  }
  for (int t = 0; t < T; ++t) {
    if (guess.customer_class[t] != 0) continue;
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) {
      terms.emplace_back(col(i, t), disc.rounded_weight[i]);
    }
    model.add_row(std::move(terms), lp::Sense::le, disc.epsilon);
  }
  return model;
}

RoundingGraph build_rounding_graph(const DiscretizedInstance& disc,
                                   const Guess& guess,
                                   const std::vector<double>& x, int horizon) {
  const int n = static_cast<int>(disc.rounded_weight.size());
  RoundingGraph rg;
  rg.customer_bounded.resize(horizon, 1);
  for (int t = 0; t < horizon; ++t) {
    const PackingPattern& pattern = guess.customer_pattern[t];
    for (int q = 1; q < disc.num_weight_classes; ++q) {
      if (pattern.counts[q] == kStarCount) rg.customer_bounded[t] = 0;
    }
  }
  std::vector<int> base(horizon, 0);
  int next_node = 0;
  for (int t = 0; t < horizon; ++t) {
    base[t] = next_node;
    next_node += rg.customer_bounded[t] ? disc.num_weight_classes : 1;
  }
  rg.graph.num_left = n;
  rg.graph.num_right = next_node;
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      double value = x[t * n + i];
      value = std::clamp(value, 0.0, 1.0);
      const int right =
          rg.customer_bounded[t] ? base[t] + disc.weight_class[i] : base[t];
      rg.graph.edges.push_back({i, right, value});
      rg.product_of.push_back(i);
      rg.customer_of.push_back(t);
    }
  }
  return rg;
}

PtasSolver::PtasSolver(const Instance& instance, double epsilon,
                       std::uint64_t guess_budget)
    : instance_(instance) {
  if (!instance_.cardinality_cap()) {
    throw Error(Errc::precondition,
                "the approximation scheme needs a cardinality cap");
  }
  if (!check_feasibility(instance_)) {
    throw Error(Errc::infeasible,
                "visibility floors cannot be met under the cardinality cap");
  }
  disc_ = discretize(instance_, epsilon);

  GuessEnumerator enumerator(disc_, instance_.horizon(), guess_budget);
  Guess guess;
  std::set<std::vector<long long>> seen;
  std::uint64_t index = 0;
  while (enumerator.next(guess)) {
    lp::LpModel model = build_relaxation(instance_, disc_, guess);
    const lp::LpSolution sol = lp::solve_lp(model);
    if (sol.status == lp::LpStatus::optimal) {
      // Distinct fractional solutions only: identical (x, node structure)
      // pairs would be rounded from the same distribution anyway.
      std::vector<long long> key;
      key.reserve(sol.x.size() + guess.customer_class.size());
      for (int t = 0; t < instance_.horizon(); ++t) {
        bool bounded = true;
        for (int q = 1; q < disc_.num_weight_classes; ++q) {
          if (guess.customer_pattern[t].counts[q] == kStarCount) bounded = false;
        }
        key.push_back(bounded);
      }
      for (double v : sol.x) {
        key.push_back(llround(std::clamp(v, 0.0, 1.0) * 1e12));
      }
      if (seen.insert(std::move(key)).second) {
        cached_.push_back(Cached{guess, sol.x, index});
      }
    } else if (sol.status == lp::LpStatus::unbounded) {
      throw Error(Errc::numeric, "relaxation is unbounded; model bug");
    }
    ++index;
  }
  guesses_enumerated_ = index;
  if (cached_.empty()) {
    throw Error(Errc::numeric,
                "no feasible relaxation found for a feasible instance");
  }
}

Plan PtasSolver::run(std::uint64_t seed, int repetitions) const {
  if (repetitions < 1) {
    throw Error(Errc::precondition, "repetitions must be positive");
  }
  const int n = instance_.num_products();
  const int T = instance_.horizon();
  const int k = *instance_.cardinality_cap();

  double best = -1.0;
  std::vector<std::vector<int>> best_sets;
  std::vector<int> shown(n);
  for (const Cached& cached : cached_) {
    const RoundingGraph rg =
        build_rounding_graph(disc_, cached.guess, cached.x, T);
    for (int rep = 0; rep < repetitions; ++rep) {
      std::mt19937_64 rng(mix_seed(seed, cached.guess_index, rep));
      const std::vector<std::uint8_t> bits = dependent_round(rg.graph, rng);

      std::vector<std::vector<int>> sets(T);
      for (std::size_t e = 0; e < bits.size(); ++e) {
        if (bits[e]) sets[rg.customer_of[e]].push_back(rg.product_of[e]);
      }
      std::fill(shown.begin(), shown.end(), 0);
      double objective = 0.0;
      for (int t = 0; t < T; ++t) {
        if (static_cast<int>(sets[t].size()) > k) {
          throw Error(Errc::numeric, "rounding exceeded the cardinality cap");
        }
        double weight = 0.0;
        for (int i : sets[t]) {
          weight += instance_.weight(i);
          ++shown[i];
        }
        objective += weight / (1.0 + weight);
      }
      for (int i = 0; i < n; ++i) {
        if (shown[i] < instance_.visibility_of(i)) {
          throw Error(Errc::numeric, "rounding missed a visibility floor");
        }
      }
      if (objective > best) {
        best = objective;
        best_sets = std::move(sets);
      }
    }
  }

  Plan plan;
  plan.assortments.reserve(T);
  for (int t = 0; t < T; ++t) {
    Assortment s(instance_, std::move(best_sets[t]));
    plan.objective += revenue(instance_, s);
    plan.assortments.push_back(std::move(s));
  }
  return plan;
}

Plan solve_apvc_ptas(const Instance& instance, const PtasOptions& options) {
  PtasSolver solver(instance, options.epsilon, options.guess_budget);
  return solver.run(options.seed, options.repetitions);
}

}  // namespace visplan
