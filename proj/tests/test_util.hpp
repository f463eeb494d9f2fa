// Copyright 2026 The fbqc-compare Authors
//
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

#ifndef FBQC_TEST_UTIL_HPP
#define FBQC_TEST_UTIL_HPP

#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "fbqc/graph_state.hpp"

namespace testutil {

using fbqc::Edge;
using fbqc::GraphState;

inline GraphState random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::set<Edge> e;
  for (std::uint32_t v = 1; v < n; ++v) e.insert({static_cast<std::uint32_t>(rng() % v), v});
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (u(rng) < p) e.insert({a, b});
  return GraphState(n, std::vector<Edge>(e.begin(), e.end()));
}

inline GraphState random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (std::uint32_t v = 1; v < n; ++v) e.push_back({static_cast<std::uint32_t>(rng() % v), v});
  return GraphState(n, e);
}

inline std::vector<GraphState> all_graphs(std::size_t n) {
  std::vector<Edge> slots;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) slots.push_back({a, b});
  std::vector<GraphState> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) e.push_back(slots[k]);
    out.emplace_back(n, e);
  }
  return out;
}

inline GraphState local_complement(const GraphState& g, std::uint32_t v) {
  auto adj = g.adjacency();
  std::set<Edge> e(g.edges().begin(), g.edges().end());
  const auto& nb = adj[v];
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      Edge k{std::min(nb[i], nb[j]), std::max(nb[i], nb[j])};
      if (!e.erase(k)) e.insert(k);
    }
  return GraphState(g.num_qubits(), std::vector<Edge>(e.begin(), e.end()));
}

inline std::vector<GraphState> lc_orbit(const GraphState& g) {
  std::set<std::vector<Edge>> seen{g.edges()};
  std::vector<GraphState> out{g};
  std::queue<GraphState> q;
  q.push(g);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    for (std::uint32_t v = 0; v < cur.num_qubits(); ++v) {
      auto nxt = local_complement(cur, v);
      if (seen.insert(nxt.edges()).second) {
        out.push_back(nxt);
        q.push(nxt);
      }
    }
  }
  return out;
}

}  // namespace testutil

#endif
