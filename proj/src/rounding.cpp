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

#include "visplan/rounding.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace visplan {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::uint8_t> dependent_round(const FractionalBipartite& graph,
                                          std::mt19937_64& rng) {
  const int E = static_cast<int>(graph.edges.size());
  const int V = graph.num_left + graph.num_right;

  std::vector<double> x(E);
  std::vector<std::vector<int>> adj(V);
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < E; ++e) {
    const auto& ed = graph.edges[e];
    if (ed.left < 0 || ed.left >= graph.num_left || ed.right < 0 ||
        ed.right >= graph.num_right) {
      throw Error(Errc::structure, "edge endpoint out of range");
    }
    if (!seen.insert({ed.left, ed.right}).second) {
      throw Error(Errc::structure, "parallel edges are not allowed");
    }
    if (ed.value < -kIntegralSnapTol || ed.value > 1.0 + kIntegralSnapTol) {
      throw Error(Errc::structure, "edge value outside [0, 1]");
    }
    x[e] = ed.value;
    if (x[e] <= kIntegralSnapTol) x[e] = 0.0;
    if (x[e] >= 1.0 - kIntegralSnapTol) x[e] = 1.0;
    adj[ed.left].push_back(e);
    adj[graph.num_left + ed.right].push_back(e);
  }

  auto endpoint = [&](int e, bool right) {
    return right ? graph.num_left + graph.edges[e].right : graph.edges[e].left;
  };
  auto other_vertex = [&](int e, int v) {
    const int l = endpoint(e, false);
    return v == l ? endpoint(e, true) : l;
  };
  auto fractional = [&](int e) { return x[e] > 0.0 && x[e] < 1.0; };
  auto snap = [&](int e) {
    if (x[e] <= kIntegralSnapTol) x[e] = 0.0;
    if (x[e] >= 1.0 - kIntegralSnapTol) x[e] = 1.0;
  };

  // Shift mass along an alternating walk. The step size is the largest one
  // keeping all values in [0, 1]; the direction probability makes the
  // expected change of every edge zero.
  auto apply = [&](const std::vector<int>& walk) {
    double delta_a = 2.0, delta_b = 2.0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const double xe = x[walk[i]];
      if (i % 2 == 0) {
        delta_a = std::min(delta_a, 1.0 - xe);
        delta_b = std::min(delta_b, xe);
      } else {
        delta_a = std::min(delta_a, xe);
        delta_b = std::min(delta_b, 1.0 - xe);
      }
    }
    const double u = uniform01(rng) * (delta_a + delta_b);
    const double step = u < delta_b ? delta_a : -delta_b;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      x[walk[i]] += (i % 2 == 0) ? step : -step;
      snap(walk[i]);
    }
  };

  std::vector<int> vpath, epath, cycle, pos(V, -1);
  // Extends the walk at its tail through strictly fractional edges; fills
  // `cycle` and reports true as soon as the walk closes on itself.
  auto extend_tail = [&]() {
    std::fill(pos.begin(), pos.end(), -1);
    for (std::size_t i = 0; i < vpath.size(); ++i) pos[vpath[i]] = static_cast<int>(i);
    while (true) {
      const int v = vpath.back();
      const int via = epath.back();
      int next = -1;
      for (int e : adj[v]) {
        if (e != via && fractional(e)) {
          next = e;
          break;
        }
      }
      if (next < 0) return false;
      const int w = other_vertex(next, v);
      if (pos[w] >= 0) {
        cycle.assign(epath.begin() + pos[w], epath.end());
        cycle.push_back(next);
        return true;
      }
      pos[w] = static_cast<int>(vpath.size());
      vpath.push_back(w);
      epath.push_back(next);
    }
  };

  int cursor = 0;
  while (true) {
    while (cursor < E && !fractional(cursor)) ++cursor;
    if (cursor == E) break;
    vpath = {endpoint(cursor, false), endpoint(cursor, true)};
    epath = {cursor};
    if (extend_tail()) {
      apply(cycle);
      continue;
    }
    std::reverse(vpath.begin(), vpath.end());
    std::reverse(epath.begin(), epath.end());
    if (extend_tail()) {
      apply(cycle);
      continue;
    }
    apply(epath);  // maximal path; both endpoints have one fractional edge
  }

  std::vector<std::uint8_t> out(E);
  for (int e = 0; e < E; ++e) out[e] = x[e] == 1.0 ? 1 : 0;
  return out;
}

}  // namespace visplan
