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

#ifndef VISPLAN_PRICING_HPP
#define VISPLAN_PRICING_HPP

#include <string>

#include "visplan/instance.hpp"

namespace visplan {

/// Attribution of the revenue lost to visibility floors.
///
/// delta is the gap between offering the unconstrained optimum to every
/// customer and the constrained optimum. Each product's contribution is
/// what it adds to (or drains from) the constrained revenue; the loss is
/// charged to vendors in proportion to their product's negative
/// contribution. All per-product vectors are in the caller's product order.
struct FeeReport {
  double unconstrained_value = 0.0;  // horizon * best single-assortment revenue
  double constrained_value = 0.0;    // optimal planned revenue
  double delta = 0.0;                // unconstrained_value - constrained_value
  std::vector<double> contributions;
  std::vector<double> fees;
  /// Set when the loss is positive but float noise left no negative
  /// contribution to charge; fees are then all zero.
  std::string warning;
};

FeeReport fee_report(const Instance& instance);

/// Fee the vendor of `product` would pay after raising its visibility floor
/// by one, all other floors unchanged. Only the assortment of the first
/// newly covered customer changes, so just that one is recomputed.
/// Throws Error(Errc::cannot_increase) when the floor is already the
/// horizon.
double fee_increment(const Instance& instance, int product);

}  // namespace visplan

#endif  // VISPLAN_PRICING_HPP
