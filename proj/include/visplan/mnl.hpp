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

#ifndef VISPLAN_MNL_HPP
#define VISPLAN_MNL_HPP

#include <optional>

#include "visplan/instance.hpp"

namespace visplan {

/// Relative tolerance under which two revenues count as equal. The
/// largest-cardinality tie-break among equally good assortments is applied
/// at this tolerance, since prefix sums under floating point cannot
/// reproduce exact ties.
inline constexpr double kRevenueTieTol = 1e-9;

/// True when |a - b| <= kRevenueTieTol * max(1, |a|, |b|).
bool revenue_tie(double a, double b);

/// Expected revenue of offering `s`: sum_{i in s} p_i v_i / (1 + V(s)).
/// The empty assortment yields 0.
double revenue(const Instance& instance, const Assortment& s);

/// MNL choice probability of `product` when `s` is offered. std::nullopt
/// selects the no-purchase option, with probability 1 / (1 + V(s)). A
/// product outside `s` is chosen with probability 0.
double choice_probability(const Instance& instance, const Assortment& s,
                          std::optional<int> product);

/// Maximum expected revenue over all supersets of `seed`, and the largest
/// assortment attaining it. Runs one pass over the price-ordered products:
/// starting from the seed, products are absorbed in non-increasing price
/// order while their price weakly exceeds the running revenue (ties, at
/// kRevenueTieTol, keep absorbing so the largest optimizer is returned).
ExpandedResult expanded(const Instance& instance, const Assortment& seed);

/// Revenue-maximizing assortment with no inclusion requirement; equals
/// expanded() of the empty seed. Ties are broken toward the largest set.
ExpandedResult unconstrained_optimum(const Instance& instance);

/// Whether adding `product` (not in `s`) weakly increases the expected
/// revenue of `s`. Decided by the price test p_j >= R(s), which is
/// equivalent to comparing the revenues directly.
/// Throws Error(Errc::precondition) when `product` is already offered.
bool add_weakly_increases_revenue(const Instance& instance,
                                  const Assortment& s, int product);

}  // namespace visplan

#endif  // VISPLAN_MNL_HPP
