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


#ifndef FBQC_MERGE_TREE_GEN_HPP
#define FBQC_MERGE_TREE_GEN_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "fbqc/cost.hpp"

namespace testutil {

using fbqc::FusionKind;
using fbqc::FusionPair;
using fbqc::MergeTree;

// Random valid merge tree over 1..12 units.
struct RandomTree {
  MergeTree tree;
  std::size_t units = 0, fusions = 0, size = 0;
};

inline RandomTree random_merge_tree(std::mt19937_64& rng) {
  RandomTree out;
  const std::size_t m = 1 + rng() % 12;
  std::vector<std::size_t> nodes;
  std::vector<std::vector<std::uint32_t>> live;
  for (std::uint32_t u = 0; u < m; ++u) {
    nodes.push_back(out.tree.add_leaf(u));
    live.push_back({3 * u, 3 * u + 1, 3 * u + 2});
  }
  while (nodes.size() > 1) {
    const auto i = rng() % nodes.size();
    auto j = rng() % (nodes.size() - 1);
    if (j >= i) ++j;
    auto a = live[i], b = live[j];
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    // Keep two survivors so later merges always have something to fuse.
    const std::size_t cap = std::min({a.size(), b.size(), (a.size() + b.size() - 2) / 2, std::size_t{3}});
    const std::size_t n = 1 + rng() % cap;
    std::vector<FusionPair> pairs;
    for (std::size_t k = 0; k < n; ++k)
      pairs.push_back({a[k], b[k], rng() % 2 ? FusionKind::Link : FusionKind::Merge});
    out.fusions += n;
    std::vector<std::uint32_t> merged(a.begin() + static_cast<long>(n), a.end());
    merged.insert(merged.end(), b.begin() + static_cast<long>(n), b.end());
    const auto id = out.tree.add_merge(nodes[i], nodes[j], pairs);
    const auto hi = std::max(i, j), lo = std::min(i, j);
    nodes.erase(nodes.begin() + static_cast<long>(hi));
    live.erase(live.begin() + static_cast<long>(hi));
    nodes[lo] = id;
    live[lo] = merged;
  }
  out.units = m;
  out.size = live[0].size();
  return out;
}

}  // namespace testutil

#endif
