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

#include "fbqc/lc_equivalence.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace fbqc {

namespace {

std::vector<BitVec> adjacency_rows(const GraphState& g) {
  std::vector<BitVec> rows(g.num_qubits(), BitVec(g.num_qubits()));
  for (auto [u, v] : g.edges()) {
    rows[u].set(v, true);
    rows[v].set(u, true);
  }
  return rows;
}

std::size_t lowest_bit(const BitVec& v) {
  const auto& w = v.words();
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
  return v.size();
}

/// Echelon basis keyed by lowest set bit. Supports undo by popping.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : cols_(cols), by_pivot_(cols, -1) {}

  /// Reduces v in place; returns its pivot or cols if v became zero.
  std::size_t reduce(BitVec& v) const {
    while (true) {
      const std::size_t p = lowest_bit(v);
      if (p >= cols_) return cols_;
      if (by_pivot_[p] < 0) return p;
      v ^= rows_[static_cast<std::size_t>(by_pivot_[p])];
    }
  }
  void push(BitVec v, std::size_t pivot) {
    by_pivot_[pivot] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
  }
  void pop() {
    by_pivot_[pivots_.back()] = -1;
    pivots_.pop_back();
    rows_.pop_back();
  }
  std::size_t size() const { return rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  int row_of(std::size_t pivot) const { return by_pivot_[pivot]; }

 private:
  std::size_t cols_;
  std::vector<int> by_pivot_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

constexpr int kInvertible[6][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 1},
                                   {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};

class LocalMapSearch {
 public:
  LocalMapSearch(std::vector<BitVec> forms, std::size_t k, std::size_t n, std::size_t budget)
      : forms_(std::move(forms)), k_(k), n_(n), budget_(budget), sys_(k + 1) {}

  LcAnswer run() {
    const bool found = dfs(0);
    if (found) return LcAnswer::Equivalent;
    return exhausted_ ? LcAnswer::Unknown : LcAnswer::NotEquivalent;
  }

 private:
  // Adds form == value; returns number of rows pushed or -1 on contradiction.
  int add(const BitVec& form, int value) {
    BitVec v(k_ + 1);
    for (std::size_t w = 0; w < form.words().size(); ++w) v.words()[w] = form.words()[w];
    v.set(k_, value != 0);
    const std::size_t p = sys_.reduce(v);
    if (p == k_ + 1) return 0;  // redundant
    if (p == k_) return -1;     // 0 = 1
    sys_.push(std::move(v), p);
    return 1;
  }

  bool dfs(std::size_t q) {
    if (q == n_) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    for (const auto& opt : kInvertible) {
      int pushed = 0;
      bool ok = true;
      for (int t = 0; t < 4 && ok; ++t) {
        const int r = add(forms_[4 * q + t], opt[t]);
        if (r < 0)
          ok = false;
        else
          pushed += r;
      }
      if (ok && dfs(q + 1)) return true;
      while (pushed--) sys_.pop();
      if (exhausted_) return false;
    }
    return false;
  }

  std::vector<BitVec> forms_;
  std::size_t k_, n_, budget_;
  Echelon sys_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

LcAnswer lc_equivalent(const GraphState& a, const GraphState& b, std::size_t node_budget) {
  const std::size_t n = a.num_qubits();
  if (b.num_qubits() != n) return LcAnswer::NotEquivalent;
  if (n == 0) return LcAnswer::Equivalent;
  const auto g1 = adjacency_rows(a);
  const auto g2 = adjacency_rows(b);
  const std::size_t cols = 4 * n;
  Echelon eq(cols);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      BitVec v(cols);
      if (g2[s].get(r)) v.flip(4 * r + 0);
      for (std::size_t i = 0; i < n; ++i)
        if (g1[r].get(i) && g2[s].get(i)) v.flip(4 * i + 1);
      if (r == s) v.flip(4 * r + 2);
      if (g1[r].get(s)) v.flip(4 * s + 3);
      const std::size_t p = eq.reduce(v);
      if (p < cols) eq.push(std::move(v), p);
    }
  }
  // Back-substitute to reduced form so pivot variables are functions of the
  // free ones.
  std::vector<BitVec> rows = eq.rows();
  const auto& piv = eq.pivots();
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return piv[x] > piv[y]; });
  std::vector<int> row_of(cols, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[piv[i]] = static_cast<int>(i);
  for (auto i : order) {
    for (std::size_t c = piv[i] + 1; c < cols; ++c)
      if (rows[i].get(c) && row_of[c] >= 0) rows[i] ^= rows[static_cast<std::size_t>(row_of[c])];
  }
  std::vector<std::size_t> free_index(cols, cols);
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c)
    if (row_of[c] < 0) free_index[c] = k++;
  if (k == 0) return LcAnswer::NotEquivalent;
  std::vector<BitVec> forms(cols, BitVec(k));
  for (std::size_t c = 0; c < cols; ++c) {
    if (row_of[c] < 0) {
      forms[c].set(free_index[c], true);
    } else {
      const auto& row = rows[static_cast<std::size_t>(row_of[c])];
      for (std::size_t f = 0; f < cols; ++f)
        if (f != c && row.get(f)) forms[c].set(free_index[f], true);
    }
  }
  LocalMapSearch search(std::move(forms), k, n, node_budget);
  return search.run();
}

LcAnswer lc_equivalent(const StabilizerTableau& a, const StabilizerTableau& b,
                       std::size_t node_budget) {
  return lc_equivalent(a.to_graph_form().graph, b.to_graph_form().graph, node_budget);
}

std::vector<std::vector<unsigned char>> pair_cut_ranks(const GraphState& g) {
  const std::size_t n = g.num_qubits();
  auto rows = adjacency_rows(g);
  std::vector<std::vector<unsigned char>> r(n, std::vector<unsigned char>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      BitVec a = rows[v], b = rows[w];
      a.set(v, false);
      a.set(w, false);
      b.set(v, false);
      b.set(w, false);
      const bool za = !a.any(), zb = !b.any();
      unsigned char rank;
      if (za && zb)
        rank = 0;
      else if (za || zb || a == b)
        rank = 1;
      else
        rank = 2;
      r[v][w] = r[w][v] = rank;
    }
  }
  return r;
}

namespace {

/// Colour refinement using the pair cut-rank matrix as edge colours.
std::vector<std::size_t> refine_colours(const std::vector<std::vector<unsigned char>>& r,
                                        std::map<std::vector<std::size_t>, std::size_t>& dict,
                                        std::vector<std::size_t> colour, std::size_t rounds) {
  const std::size_t n = r.size();
  for (std::size_t it = 0; it < rounds; ++it) {
    std::vector<std::size_t> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::size_t> sig;
      for (std::size_t w = 0; w < n; ++w)
        if (w != v) sig.push_back(colour[w] * 3 + r[v][w]);
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), colour[v]);
      auto [pos, inserted] = dict.emplace(std::move(sig), dict.size());
      next[v] = pos->second;
    }
    colour = std::move(next);
  }
  return colour;
}

}  // namespace

std::optional<std::vector<std::size_t>> lc_isomorphism(const GraphState& a, const GraphState& b,
                                                       std::size_t leaf_budget) {
  const std::size_t n = a.num_qubits();
  if (b.num_qubits() != n) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  const auto ra = pair_cut_ranks(a);
  const auto rb = pair_cut_ranks(b);
  // Shared dictionary so colours are comparable across the two graphs.
  std::map<std::vector<std::size_t>, std::size_t> dict;
  std::vector<std::size_t> ca(n, 0), cb(n, 0);
  const std::size_t rounds = std::min<std::size_t>(n, 4);
  for (std::size_t it = 0; it < rounds; ++it) {
    ca = refine_colours(ra, dict, ca, 1);
    cb = refine_colours(rb, dict, cb, 1);
  }
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // Assign vertices of `a` in order of rarest colour class first.
  std::map<std::size_t, std::size_t> class_size;
  for (auto c : ca) ++class_size[c];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto x, auto y) { return class_size[ca[x]] < class_size[ca[y]]; });

  std::vector<std::size_t> perm(n, n);
  std::vector<char> used(n, 0);
  std::size_t leaves = 0;
  std::optional<std::vector<std::size_t>> result;

  auto leaf_check = [&]() {
    std::vector<Edge> mapped;
    for (auto [u, v] : a.edges())
      mapped.emplace_back(static_cast<std::uint32_t>(perm[u]), static_cast<std::uint32_t>(perm[v]));
    GraphState am(n, std::move(mapped));
    return lc_equivalent(am, b) == LcAnswer::Equivalent;
  };

  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) {
      ++leaves;
      if (leaf_check()) {
        result = perm;
        return true;
      }
      return false;
    }
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t u = order[d];
        ok = ra[v][u] == rb[w][perm[u]];
      }
      if (!ok) continue;
      perm[v] = w;
      used[w] = 1;
      if (self(self, depth + 1)) return true;
      used[w] = 0;
      perm[v] = n;
      if (leaves >= leaf_budget) return false;
    }
    return false;
  };
  rec(rec, 0);
  return result;
}

bool lc_isomorphic(const GraphState& a, const GraphState& b) {
  return lc_isomorphism(a, b).has_value();
}

}  // namespace fbqc
