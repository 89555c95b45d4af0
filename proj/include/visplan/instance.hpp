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

#ifndef VISPLAN_INSTANCE_HPP
#define VISPLAN_INSTANCE_HPP

#include <optional>
#include <vector>

#include "visplan/error.hpp"

namespace visplan {

/// An assortment planning instance under the multinomial logit choice model.
///
/// Products keep the caller's 0-based indices in every public interface.
/// Internally the instance also maintains a stable non-increasing price order,
/// which the solvers traverse; the no-purchase weight is fixed at 1.
///
/// Immutable after construction; safe to share across threads.
class Instance {
 public:
  /// Validates and stores the instance data.
  ///
  /// Requirements: all vectors have the same length n >= 1, weights are
  /// strictly positive, prices are non-negative, 0 <= visibility[i] <=
  /// horizon, horizon >= 1, and the cardinality cap (if any) is >= 1.
  /// Violations raise Error(Errc::invalid_instance).
  Instance(std::vector<double> prices, std::vector<double> weights,
           std::vector<int> visibility, int horizon,
           std::optional<int> cardinality_cap = std::nullopt);

  int num_products() const { return static_cast<int>(prices_.size()); }
  int horizon() const { return horizon_; }
  const std::optional<int>& cardinality_cap() const { return cap_; }

  const std::vector<double>& prices() const { return prices_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& visibility() const { return visibility_; }

  double price(int product) const { return prices_[product]; }
  double weight(int product) const { return weights_[product]; }
  int visibility_of(int product) const { return visibility_[product]; }

  /// Product at the given rank in the non-increasing price order.
  /// Equal prices keep their input order (stable sort).
  int product_by_price_rank(int rank) const { return by_price_[rank]; }

  /// Sum of all preference weights, V(N).
  double total_weight() const { return total_weight_; }

  bool prices_all_equal() const;

  /// Throws Error(Errc::invalid_assortment) unless 0 <= product < n.
  void check_product(int product) const;

 private:
  std::vector<double> prices_;
  std::vector<double> weights_;
  std::vector<int> visibility_;
  int horizon_;
  std::optional<int> cap_;
  std::vector<int> by_price_;
  double total_weight_;
};

/// A set of products offered to one customer, with its total weight cached.
/// Members are unique, sorted, 0-based product indices in the caller's order.
class Assortment {
 public:
  Assortment() = default;

  /// Builds an assortment for `instance`, validating and normalizing the
  /// member list (sorted, duplicates removed). Caches the total weight.
  Assortment(const Instance& instance, std::vector<int> members);

  const std::vector<int>& members() const { return members_; }
  double total_weight() const { return total_weight_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int product) const;

  bool operator==(const Assortment& other) const {
    return members_ == other.members_;
  }

 private:
  std::vector<int> members_;
  double total_weight_ = 0.0;
};

/// A sequence of assortments, one per customer, and its total expected
/// revenue under the MNL model.
struct Plan {
  std::vector<Assortment> assortments;
  double objective = 0.0;
};

/// The revenue-maximizing superset of a seed set (largest one among ties)
/// together with its expected revenue.
struct ExpandedResult {
  Assortment expanded_set;
  double expanded_revenue = 0.0;
};

}  // namespace visplan

#endif  // VISPLAN_INSTANCE_HPP
