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

#ifndef VISPLAN_ROUNDING_HPP
#define VISPLAN_ROUNDING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "visplan/error.hpp"

namespace visplan {

/// Edge values within this distance of 0 or 1 are snapped before rounding,
/// so the pipage walk terminates under floating point.
inline constexpr double kIntegralSnapTol = 1e-9;

/// A simple bipartite graph with an edge value in [0, 1] per edge.
/// Left vertices are 0..num_left-1, right vertices 0..num_right-1.
struct FractionalBipartite {
  int num_left = 0;
  int num_right = 0;

  struct Edge {
    int left = 0;
    int right = 0;
    double value = 0.0;
  };
  std::vector<Edge> edges;
};

/// Randomized rounding of the edge values to {0, 1} with:
///   - marginal preservation: each edge is selected with probability equal
///     to its fractional value;
///   - degree preservation: every vertex's rounded degree is the floor or
///     the ceiling of its fractional degree, in every realization;
///   - negative cylinder correlation within each vertex's edge set.
///
/// Repeatedly finds a cycle, else a maximal path, among the strictly
/// fractional edges, 2-colors it into alternating groups, and shifts mass
/// between the groups by the largest step that makes an edge integral,
/// picking the direction with the marginal-preserving probability.
///
/// Already-integral edges are returned unchanged. Throws
/// Error(Errc::structure) for out-of-range endpoints, values outside
/// [0, 1], or parallel edges.
std::vector<std::uint8_t> dependent_round(const FractionalBipartite& graph,
                                          std::mt19937_64& rng);

}  // namespace visplan

#endif  // VISPLAN_ROUNDING_HPP
