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

#include "visplan/mnl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace visplan {

bool revenue_tie(double a, double b) {
  return std::abs(a - b) <=
         kRevenueTieTol * std::max({1.0, std::abs(a), std::abs(b)});
}

double revenue(const Instance& instance, const Assortment& s) {
  double num = 0.0;
  double den = 1.0;
  for (int i : s.members()) {
    instance.check_product(i);
    num += instance.price(i) * instance.weight(i);
    den += instance.weight(i);
  }
  return num / den;
}

double choice_probability(const Instance& instance, const Assortment& s,
                          std::optional<int> product) {
  const double den = 1.0 + s.total_weight();
  if (!product.has_value()) {
    return 1.0 / den;
  }
  instance.check_product(*product);
  if (!s.contains(*product)) {
    return 0.0;
  }
  return instance.weight(*product) / den;
}

ExpandedResult expanded(const Instance& instance, const Assortment& seed) {
  double num = 0.0;
  double den = 1.0;
  std::vector<char> member(instance.num_products(), 0);
  for (int i : seed.members()) {
    instance.check_product(i);
    member[i] = 1;
    num += instance.price(i) * instance.weight(i);
    den += instance.weight(i);
  }
  std::vector<int> chosen = seed.members();
  // Price-ordered scan: the optimizer is the seed plus a price prefix, so
  // absorbing until the first product priced strictly below the running
  // revenue is exact. Tie-priced products leave the revenue unchanged and
  // are absorbed, which realizes the largest-cardinality tie-break.
  for (int rank = 0; rank < instance.num_products(); ++rank) {
    const int i = instance.product_by_price_rank(rank);
    if (member[i]) continue;
    const double current = num / den;
    const double p = instance.price(i);
    if (p > current || revenue_tie(p, current)) {
      member[i] = 1;
      chosen.push_back(i);
      num += p * instance.weight(i);
      den += instance.weight(i);
    } else {
      break;
    }
  }
  ExpandedResult result;
  result.expanded_set = Assortment(instance, std::move(chosen));
  result.expanded_revenue = num / den;
  return result;
}

ExpandedResult unconstrained_optimum(const Instance& instance) {
  return expanded(instance, Assortment());
}

bool add_weakly_increases_revenue(const Instance& instance,
                                  const Assortment& s, int product) {
  instance.check_product(product);
  if (s.contains(product)) {
    throw Error(Errc::precondition,
                "product " + std::to_string(product) + " is already offered");
  }
  return instance.price(product) >= revenue(instance, s);
}

}  // namespace visplan
