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

#include "fbqc/cost.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fbqc/lc_equivalence.hpp"

namespace fbqc {

std::size_t MergeTree::add_leaf(std::uint32_t unit) {
  Node n;
  n.unit = unit;
  nodes_.push_back(n);
  root_ = static_cast<int>(nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t MergeTree::add_merge(std::size_t left, std::size_t right, std::vector<FusionPair> pairs) {
  if (left >= nodes_.size() || right >= nodes_.size()) throw ValidationError("bad child index");
  Node n;
  n.left = static_cast<int>(left);
  n.right = static_cast<int>(right);
  n.pairs = std::move(pairs);
  nodes_.push_back(std::move(n));
  root_ = static_cast<int>(nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t MergeTree::num_units() const {
  std::size_t c = 0;
  for (const auto& n : nodes_) c += n.is_leaf();
  return c;
}

std::size_t MergeTree::num_fusions() const {
  std::size_t c = 0;
  for (const auto& n : nodes_) c += n.pairs.size();
  return c;
}

std::size_t MergeTree::validate() const {
  if (root_ < 0) throw ValidationError("empty merge tree");
  std::unordered_set<std::uint32_t> units;
  std::vector<char> visited(nodes_.size(), 0);
  // Returns the live qubit set of a subtree.
  auto rec = [&](auto&& self, int id) -> std::unordered_set<std::uint32_t> {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size() || visited[id])
      throw ValidationError("merge tree is not a tree");
    visited[id] = 1;
    const Node& n = nodes_[id];
    if (n.is_leaf()) {
      if (n.right >= 0) throw ValidationError("malformed leaf");
      if (!units.insert(n.unit).second) throw ValidationError("unit used twice");
      return {3 * n.unit, 3 * n.unit + 1, 3 * n.unit + 2};
    }
    if (n.pairs.empty()) throw ValidationError("merge with no fusions");
    auto l = self(self, n.left);
    auto r = self(self, n.right);
    for (const auto& p : n.pairs) {
      if (!l.erase(p.left)) throw ValidationError("left fused qubit not live in left subtree");
      if (!r.erase(p.right)) throw ValidationError("right fused qubit not live in right subtree");
    }
    l.insert(r.begin(), r.end());
    return l;
  };
  return rec(rec, root_).size();
}

std::vector<std::uint32_t> MergeTree::leaf_order() const {
  std::vector<std::uint32_t> out;
  if (root_ < 0) return out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.is_leaf()) {
      out.push_back(n.unit);
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  return out;
}

CostInt schedule_cost(const MergeTree& tree) {
  tree.validate();
  auto rec = [&](auto&& self, int id) -> CostInt {
    const auto& n = tree.nodes()[id];
    if (n.is_leaf()) return 1;
    CostInt c = self(self, n.left) + self(self, n.right);
    return c << static_cast<unsigned>(n.pairs.size());
  };
  return rec(rec, tree.root());
}

CostInt lower_bound(std::uint64_t s) {
  if (s < 3) throw ValidationError("lower bound needs at least 3 qubits");
  CostInt d = s - 2;
  return d * d;
}

namespace {

StabilizerTableau ghz3() {
  return StabilizerTableau(3, {PauliString::parse("XXX"), PauliString::parse("ZZ_"),
                               PauliString::parse("_ZZ")});
}

void fuse_in_place(StabilizerTableau& t, std::size_t a, std::size_t b, FusionKind kind) {
  if (kind == FusionKind::Link) t.apply_h(b);
  const std::size_t n = t.num_qubits();
  PauliString xx(n), zz(n);
  xx.x.set(a, true);
  xx.x.set(b, true);
  zz.z.set(a, true);
  zz.z.set(b, true);
  t.measure(xx);
  t.measure(zz);
}

}  // namespace

TreeExecution execute_tree(const MergeTree& tree) {
  tree.validate();
  auto rec = [&](auto&& self, int id) -> TreeExecution {
    const auto& n = tree.nodes()[id];
    if (n.is_leaf()) return {ghz3(), {3 * n.unit, 3 * n.unit + 1, 3 * n.unit + 2}};
    auto l = self(self, n.left);
    auto r = self(self, n.right);
    TreeExecution out{l.state.tensor(r.state), l.qubits};
    out.qubits.insert(out.qubits.end(), r.qubits.begin(), r.qubits.end());
    std::unordered_map<std::uint32_t, std::size_t> pos;
    for (std::size_t i = 0; i < out.qubits.size(); ++i) pos[out.qubits[i]] = i;
    std::vector<std::size_t> gone;
    for (const auto& p : n.pairs) {
      const auto a = pos.at(p.left), b = pos.at(p.right);
      fuse_in_place(out.state, a, b, p.kind);
      gone.push_back(a);
      gone.push_back(b);
    }
    out.state.remove_qubits(gone);
    std::sort(gone.begin(), gone.end());
    std::vector<std::uint32_t> kept;
    for (std::size_t i = 0; i < out.qubits.size(); ++i)
      if (!std::binary_search(gone.begin(), gone.end(), i)) kept.push_back(out.qubits[i]);
    out.qubits = std::move(kept);
    return out;
  };
  return rec(rec, tree.root());
}

GraphState apply_merge(const GraphState& left, const GraphState& right,
                       const std::vector<FusionPair>& pairs) {
  const auto dl = left.degrees(), dr = right.degrees();
  std::unordered_set<std::uint32_t> used_l, used_r;
  for (const auto& p : pairs) {
    if (p.left >= left.num_qubits() || p.right >= right.num_qubits())
      throw ValidationError("fused qubit out of range");
    if (dl[p.left] != 1 || dr[p.right] != 1)
      throw ValidationError("fused qubits must have degree 1");
    if (!used_l.insert(p.left).second || !used_r.insert(p.right).second)
      throw ValidationError("pairs share a qubit");
  }
  const std::size_t nl = left.num_qubits();
  auto t = graph_to_tableau(left).tensor(graph_to_tableau(right));
  std::vector<std::size_t> gone;
  for (const auto& p : pairs) {
    fuse_in_place(t, p.left, nl + p.right, p.kind);
    gone.push_back(p.left);
    gone.push_back(nl + p.right);
  }
  t.remove_qubits(gone);
  return t.to_graph_form().graph;
}

bool validate_schedule(const MergeTree& tree, const GraphState& target) {
  try {
    auto run = execute_tree(tree);
    if (run.state.num_qubits() != target.num_qubits()) return false;
    return lc_isomorphic(run.state.to_graph_form().graph, target);
  } catch (const ValidationError&) {
    return false;
  }
}

bool validate_schedule(const MergeTree& tree, const GraphState& target,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& qubit_map) {
  try {
    auto run = execute_tree(tree);
    const std::size_t n = run.state.num_qubits();
    if (n != target.num_qubits() || qubit_map.size() != n) return false;
    std::unordered_map<std::uint32_t, std::uint32_t> m(qubit_map.begin(), qubit_map.end());
    std::vector<std::size_t> perm(n);
    std::vector<char> hit(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = m.find(run.qubits[i]);
      if (it == m.end() || it->second >= n || hit[it->second]) return false;
      perm[i] = it->second;
      hit[it->second] = 1;
    }
    return lc_equivalent(run.state.permuted(perm), graph_to_tableau(target)) ==
           LcAnswer::Equivalent;
  } catch (const ValidationError&) {
    return false;
  }
}

PhotonsPerFusion photons_per_encoded_fusion(const ResourceFamily&, const ShorCode& code) {
  code.validate();
  return {Rational(2 * code.size()),
          "photons per encoded fusion depends on how the encoding is split across "
          "concatenation levels and ignores the resource-state size"};
}

}  // namespace fbqc
