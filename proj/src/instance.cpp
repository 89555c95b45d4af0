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

#include "visplan/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace visplan {

Instance::Instance(std::vector<double> prices, std::vector<double> weights,
                   std::vector<int> visibility, int horizon,
                   std::optional<int> cardinality_cap)
    : prices_(std::move(prices)),
      weights_(std::move(weights)),
      visibility_(std::move(visibility)),
      horizon_(horizon),
      cap_(cardinality_cap) {
  const std::size_t n = prices_.size();
  if (n == 0) {
    throw Error(Errc::invalid_instance, "instance needs at least one product");
  }
  if (weights_.size() != n || visibility_.size() != n) {
    throw Error(Errc::invalid_instance,
                "prices, weights and visibility must have equal length");
  }
  if (horizon_ < 1) {
    throw Error(Errc::invalid_instance, "horizon must be positive");
  }
  if (cap_ && *cap_ < 1) {
    throw Error(Errc::invalid_instance, "cardinality cap must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(prices_[i] >= 0.0) || !std::isfinite(prices_[i])) {
      throw Error(Errc::invalid_instance,
                  "price of product " + std::to_string(i) +
                      " must be finite and non-negative");
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw Error(Errc::invalid_instance,
                  "weight of product " + std::to_string(i) +
                      " must be finite and strictly positive");
    }
    if (visibility_[i] < 0 || visibility_[i] > horizon_) {
      throw Error(Errc::invalid_instance,
                  "visibility of product " + std::to_string(i) +
                      " must lie in [0, horizon]");
    }
  }
  by_price_.resize(n);
  std::iota(by_price_.begin(), by_price_.end(), 0);
  std::stable_sort(by_price_.begin(), by_price_.end(),
                   [this](int a, int b) { return prices_[a] > prices_[b]; });
  total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool Instance::prices_all_equal() const {
  return std::all_of(prices_.begin(), prices_.end(),
                     [this](double p) { return p == prices_[0]; });
}

void Instance::check_product(int product) const {
  if (product < 0 || product >= num_products()) {
    throw Error(Errc::invalid_assortment,
                "product index " + std::to_string(product) + " out of range");
  }
}

Assortment::Assortment(const Instance& instance, std::vector<int> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  for (int i : members_) {
    instance.check_product(i);
    total_weight_ += instance.weight(i);
  }
}

bool Assortment::contains(int product) const {
  return std::binary_search(members_.begin(), members_.end(), product);
}

}  // namespace visplan
