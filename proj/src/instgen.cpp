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

#include "visplan/instgen.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace visplan {
namespace {

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Instance gen_random(int num_products, int horizon, std::uint64_t seed,
                    PriceMode price_mode, std::optional<int> cardinality_cap) {
  if (num_products < 1 || horizon < 1) {
    throw Error(Errc::invalid_instance, "need at least one product and customer");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> prices(num_products), weights(num_products);
  std::vector<int> visibility(num_products);
  for (double& p : prices) {
    p = price_mode == PriceMode::equal ? 1.0 : 10.0 * u01(rng);
  }
  const double lo = std::log(1e-3), hi = std::log(10.0);
  for (double& w : weights) {
    w = std::exp(lo + (hi - lo) * u01(rng));
  }
  for (int& l : visibility) {
    l = static_cast<int>(rng() % static_cast<std::uint64_t>(horizon + 1));
  }
  return Instance(std::move(prices), std::move(weights), std::move(visibility),
                  horizon, cardinality_cap);
}

Instance gen_3partition(const std::vector<long long>& values) {
  if (values.empty() || values.size() % 3 != 0) {
    throw Error(Errc::invalid_instance,
                "need a positive multiple of 3 integers");
  }
  const int horizon = static_cast<int>(values.size()) / 3;
  long long sum = 0;
  for (long long v : values) {
    if (v <= 0) {
      throw Error(Errc::invalid_instance, "entries must be positive integers");
    }
    sum += v;
  }
  if (sum % horizon != 0) {
    throw Error(Errc::invalid_instance,
                "sum " + std::to_string(sum) + " is not divisible by " +
                    std::to_string(horizon));
  }
  const int n = static_cast<int>(values.size());
  std::vector<double> prices(n, 1.0), weights(n);
  for (int i = 0; i < n; ++i) weights[i] = static_cast<double>(values[i]);
  return Instance(std::move(prices), std::move(weights),
                  std::vector<int>(n, 1), horizon, 3);
}

bool three_partition_yes(const std::vector<long long>& values) {
  if (values.empty() || values.size() % 3 != 0) {
    throw Error(Errc::invalid_instance,
                "need a positive multiple of 3 integers");
  }
  if (values.size() > 12) {
    throw Error(Errc::too_large, "decider is guarded to 12 values");
  }
  const int t = static_cast<int>(values.size()) / 3;
  const long long sum = std::accumulate(values.begin(), values.end(), 0ll);
  if (sum % t != 0) return false;
  const long long target = sum / t;

  const int n = static_cast<int>(values.size());
  std::vector<char> used(n, 0);
  auto solve = [&](auto&& self, int remaining) -> bool {
    if (remaining == 0) return true;
    int first = 0;
    while (used[first]) ++first;
    used[first] = 1;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      for (int k = j + 1; k < n; ++k) {
        if (used[k] || values[first] + values[j] + values[k] != target) continue;
        used[k] = 1;
        if (self(self, remaining - 1)) return true;
        used[k] = 0;
      }
      used[j] = 0;
    }
    used[first] = 0;
    return false;
  };
  return solve(solve, t);
}

}  // namespace visplan
