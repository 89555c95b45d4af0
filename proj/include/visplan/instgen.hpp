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

#ifndef VISPLAN_INSTGEN_HPP
#define VISPLAN_INSTGEN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "visplan/instance.hpp"

namespace visplan {

enum class PriceMode { general, equal };

/// Seeded random instance: prices uniform on [0, 10] (or all 1 in equal
/// mode), weights log-uniform on [1e-3, 10], visibility floors uniform on
/// {0..horizon}. Identical seeds give identical instances.
Instance gen_random(int num_products, int horizon, std::uint64_t seed,
                    PriceMode price_mode = PriceMode::general,
                    std::optional<int> cardinality_cap = std::nullopt);

/// Hard-instance gadget from a list of 3T positive integers summing to B*T:
/// one unit-priced product per integer with that weight, every floor 1,
/// horizon T and cap 3. Throws Error(Errc::invalid_instance) for malformed
/// input (size not a multiple of 3, non-positive entries, sum not divisible
/// by T).
Instance gen_3partition(const std::vector<long long>& values);

/// Exact decider: can the integers be split into triplets of equal sum?
/// Backtracking over triplets; guarded to at most 12 values
/// (Error(Errc::too_large) beyond).
bool three_partition_yes(const std::vector<long long>& values);

}  // namespace visplan

#endif  // VISPLAN_INSTGEN_HPP
