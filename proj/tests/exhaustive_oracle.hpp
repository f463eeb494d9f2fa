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

// Exhaustive cheapest-schedule search for small targets. Explores every
// state reachable from 3GHZ units by merging two earlier states with any
// number of Bell measurements in any single-qubit Clifford frame, and keeps
// one representative per class up to local Cliffords and relabelling.

#ifndef FBQC_EXHAUSTIVE_ORACLE_HPP
#define FBQC_EXHAUSTIVE_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "fbqc/lc_equivalence.hpp"
#include "fbqc/stabilizer.hpp"

namespace oracle {

using namespace fbqc;

struct ClassEntry {
  GraphState graph;
  std::uint64_t cost;
  bool settled = false;
};

inline std::vector<std::vector<unsigned char>> lc_key(const GraphState& g) {
  auto r = pair_cut_ranks(g);
  for (auto& row : r) std::sort(row.begin(), row.end());
  std::sort(r.begin(), r.end());
  return r;
}

// Frame k in 0..5 applied to qubit q: I, H, S, HS, SH, HSH.
inline void apply_frame(StabilizerTableau& t, std::size_t q, int k) {
  switch (k) {
    case 1: t.apply_h(q); break;
    case 2: t.apply_s(q); break;
    case 3: t.apply_h(q); t.apply_s(q); break;
    case 4: t.apply_s(q); t.apply_h(q); break;
    case 5: t.apply_h(q); t.apply_s(q); t.apply_h(q); break;
    default: break;
  }
}

/// Returns the minimum cost of any schedule producing a state
/// LC-isomorphic to target, or nullopt when it exceeds `upper`.
inline std::optional<std::uint64_t> exhaustive_min_cost(const GraphState& target, std::uint64_t upper) {
  std::vector<ClassEntry> classes;
  std::map<std::pair<std::size_t, std::vector<std::vector<unsigned char>>>, std::vector<std::size_t>> buckets;
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

  auto offer = [&](const GraphState& g, std::uint64_t cost) {
    auto& b = buckets[{g.num_qubits(), lc_key(g)}];
    for (auto idx : b) {
      if (lc_isomorphic(classes[idx].graph, g)) {
        if (!classes[idx].settled && cost < classes[idx].cost) {
          classes[idx].cost = cost;
          pq.push({cost, idx});
        }
        return;
      }
    }
    classes.push_back({g, cost});
    b.push_back(classes.size() - 1);
    pq.push({cost, classes.size() - 1});
  };

  offer(path_graph(3), 1);
  const auto target_key = lc_key(target);
  std::vector<std::size_t> settled;
  while (!pq.empty()) {
    auto [cost, idx] = pq.top();
    pq.pop();
    if (classes[idx].settled || cost != classes[idx].cost) continue;
    classes[idx].settled = true;
    settled.push_back(idx);
    const auto& g = classes[idx].graph;
    if (g.num_qubits() == target.num_qubits() && lc_key(g) == target_key && lc_isomorphic(g, target))
      return cost;
    for (auto jdx : settled) {
      const GraphState ga = classes[idx].graph, gb = classes[jdx].graph;
      const std::uint64_t base = cost + classes[jdx].cost;
      if (2 * base > upper) continue;
      const std::size_t a = ga.num_qubits(), b = gb.num_qubits();
      const auto ta = graph_to_tableau(ga), tb = graph_to_tableau(gb);
      for (std::size_t n = 1; n <= std::min(a, b) && (base << n) <= upper; ++n) {
        if (a + b - 2 * n == 0) continue;
        // Subsets of A of size n (ascending), injections into B, frames.
        std::vector<std::size_t> sa(n), sb(n);
        std::vector<int> fr(n);
        auto rec_frames = [&](auto&& self, std::size_t k) -> void {
          if (k == n) {
            auto t = ta.tensor(tb);
            std::vector<std::size_t> gone;
            for (std::size_t i = 0; i < n; ++i) {
              apply_frame(t, sa[i], fr[i]);
              const std::size_t x = sa[i], y = a + sb[i];
              PauliString xx(a + b), zz(a + b);
              xx.x.set(x, true);
              xx.x.set(y, true);
              zz.z.set(x, true);
              zz.z.set(y, true);
              t.measure(xx);
              t.measure(zz);
              gone.push_back(x);
              gone.push_back(y);
            }
            t.remove_qubits(gone);
            offer(t.to_graph_form().graph, base << n);
            return;
          }
          for (int f = 0; f < 6; ++f) {
            fr[k] = f;
            self(self, k + 1);
          }
        };
        std::vector<char> usedb(b, 0);
        auto rec_b = [&](auto&& self, std::size_t k) -> void {
          if (k == n) {
            rec_frames(rec_frames, 0);
            return;
          }
          for (std::size_t y = 0; y < b; ++y) {
            if (usedb[y]) continue;
            usedb[y] = 1;
            sb[k] = y;
            self(self, k + 1);
            usedb[y] = 0;
          }
        };
        auto rec_a = [&](auto&& self, std::size_t k, std::size_t from) -> void {
          if (k == n) {
            rec_b(rec_b, 0);
            return;
          }
          for (std::size_t x = from; x < a; ++x) {
            sa[k] = x;
            self(self, k + 1, x + 1);
          }
        };
        rec_a(rec_a, 0, 0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace oracle

#endif
