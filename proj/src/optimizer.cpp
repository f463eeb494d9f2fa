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

#include "fbqc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "fbqc/random.hpp"

namespace fbqc {

// ---------------------------------------------------------------------------
// Spider diagram

SpiderDiagram SpiderDiagram::from_graph(const GraphState& g) {
  SpiderDiagram d;
  d.spiders.resize(g.num_qubits());
  for (std::uint32_t v = 0; v < g.num_qubits(); ++v) d.spiders[v].outputs.push_back(v);
  for (auto [u, v] : g.edges()) {
    d.spiders[u].nbrs.insert(v);
    d.spiders[v].nbrs.insert(u);
  }
  return d;
}

std::size_t SpiderDiagram::unit_count() const {
  std::size_t c = 0;
  for (const auto& s : spiders)
    if (s.alive && s.legs() >= 3) c += s.legs() - 2;
  return c;
}

std::size_t SpiderDiagram::live_spiders() const {
  std::size_t c = 0;
  for (const auto& s : spiders) c += s.alive;
  return c;
}

std::size_t SpiderDiagram::cycle_rank() const {
  std::size_t v = 0, e = 0;
  for (const auto& s : spiders) {
    if (!s.alive) continue;
    ++v;
    e += s.nbrs.size();
  }
  e /= 2;
  return e + 1 >= v ? e + 1 - v : 0;
}

namespace {

void toggle_edge(SpiderDiagram& d, std::uint32_t a, std::uint32_t b) {
  if (a == b) return;  // Hadamard self-loop: a Pauli phase, dropped
  if (!d.spiders[a].nbrs.erase(b)) {
    d.spiders[a].nbrs.insert(b);
    d.spiders[b].nbrs.insert(a);
  } else {
    d.spiders[b].nbrs.erase(a);
  }
}

bool absorb_pendants(SpiderDiagram& d) {
  bool changed = false;
  for (std::uint32_t s = 0; s < d.spiders.size(); ++s) {
    auto& sp = d.spiders[s];
    if (!sp.alive || sp.outputs.size() != 1 || sp.nbrs.size() != 1) continue;
    const std::uint32_t t = *sp.nbrs.begin();
    auto& tp = d.spiders[t];
    if (tp.outputs.size() == 1 && tp.nbrs.size() == 1) continue;  // Bell pair
    tp.outputs.push_back(sp.outputs[0]);
    tp.nbrs.erase(s);
    sp.outputs.clear();
    sp.nbrs.clear();
    sp.alive = false;
    changed = true;
  }
  return changed;
}

bool remove_internal_wires(SpiderDiagram& d) {
  bool changed = false;
  for (std::uint32_t s = 0; s < d.spiders.size(); ++s) {
    auto& sp = d.spiders[s];
    if (!sp.alive || !sp.outputs.empty()) continue;
    if (sp.nbrs.empty()) {
      sp.alive = false;
      changed = true;
      continue;
    }
    if (sp.nbrs.size() == 1) throw std::logic_error("diagram collapses to a product state");
    if (sp.nbrs.size() != 2) continue;
    const std::uint32_t u = *sp.nbrs.begin(), w = *std::next(sp.nbrs.begin());
    d.spiders[u].nbrs.erase(s);
    d.spiders[w].nbrs.erase(s);
    sp.nbrs.clear();
    sp.alive = false;
    // The two Hadamards cancel: u and w become one spider.
    auto wn = d.spiders[w].nbrs;
    for (auto x : wn) {
      d.spiders[w].nbrs.erase(x);
      d.spiders[x].nbrs.erase(w);
      toggle_edge(d, u, x);
    }
    auto& up = d.spiders[u];
    auto& wp = d.spiders[w];
    up.outputs.insert(up.outputs.end(), wp.outputs.begin(), wp.outputs.end());
    wp.outputs.clear();
    wp.alive = false;
    changed = true;
  }
  return changed;
}

bool bialgebra_step(SpiderDiagram& d) {
  std::map<std::set<std::uint32_t>, std::vector<std::uint32_t>> classes;
  for (std::uint32_t s = 0; s < d.spiders.size(); ++s) {
    const auto& sp = d.spiders[s];
    if (sp.alive && sp.nbrs.size() >= 2) classes[sp.nbrs].push_back(s);
  }
  const std::vector<std::uint32_t>* best = nullptr;
  const std::set<std::uint32_t>* best_nbrs = nullptr;
  std::size_t best_gain = 0;
  for (const auto& [nbrs, group] : classes) {
    if (group.size() < 2) continue;
    const std::size_t gain = (group.size() - 1) * (nbrs.size() - 1);
    if (gain > best_gain) {
      best_gain = gain;
      best = &group;
      best_nbrs = &nbrs;
    }
  }
  if (!best) return false;
  const auto twins = *best;
  const auto nbrs = *best_nbrs;
  const auto p = static_cast<std::uint32_t>(d.spiders.size());
  const auto w = p + 1;
  d.spiders.emplace_back();
  d.spiders.emplace_back();
  for (auto t : twins) {
    for (auto x : nbrs) {
      d.spiders[t].nbrs.erase(x);
      d.spiders[x].nbrs.erase(t);
    }
    toggle_edge(d, t, p);
  }
  toggle_edge(d, p, w);
  for (auto x : nbrs) toggle_edge(d, w, x);
  return true;
}

}  // namespace

void SpiderDiagram::simplify() {
  while (true) {
    bool changed = false;
    changed |= absorb_pendants(*this);
    changed |= remove_internal_wires(*this);
    if (changed) continue;
    if (!bialgebra_step(*this)) break;
  }
}

std::uint64_t balanced_cost(std::uint64_t k) {
  if (k == 0) return 0;
  std::uint64_t p = 1;
  while (p * 2 <= k) p *= 2;
  return p * (3 * k - 2 * p);
}

// ---------------------------------------------------------------------------
// Unit fusion graph and schedule search

namespace {

constexpr std::uint64_t kSat = std::uint64_t{1} << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kSat, a + b); }
std::uint64_t sat_shl(std::uint64_t c, std::size_t n) {
  if (n >= 62 || c > (kSat >> n)) return kSat;
  return c << n;
}

struct ExtLeg {
  bool output;
  std::uint32_t target;  // target qubit, or neighbour spider
};

struct SpiderUnits {
  std::uint32_t first = 0;
  std::uint32_t count = 0;
  std::vector<std::pair<std::uint32_t, std::uint8_t>> slots;  // (unit, leg)
  std::vector<ExtLeg> legs;
};

struct UEdge {
  FusionKind kind;
  std::uint32_t s, a;  // spider, external leg index (chain: unit offset)
  std::uint32_t t, b;
};

struct UnitGraph {
  std::vector<SpiderUnits> sp;
  std::vector<UEdge> edges;
  std::uint32_t units = 0;
};

UnitGraph build_unit_graph(const SpiderDiagram& d) {
  UnitGraph g;
  std::vector<std::uint32_t> index(d.spiders.size(), UINT32_MAX);
  for (std::uint32_t s = 0; s < d.spiders.size(); ++s) {
    const auto& sp = d.spiders[s];
    if (!sp.alive) continue;
    if (sp.legs() < 3) throw std::logic_error("spider with fewer than three legs");
    index[s] = static_cast<std::uint32_t>(g.sp.size());
    SpiderUnits su;
    su.first = g.units;
    su.count = static_cast<std::uint32_t>(sp.legs() - 2);
    g.units += su.count;
    for (auto o : sp.outputs) su.legs.push_back({true, o});
    for (auto x : sp.nbrs) su.legs.push_back({false, x});
    if (su.count == 1) {
      for (std::uint8_t l = 0; l < 3; ++l) su.slots.push_back({su.first, l});
    } else {
      su.slots.push_back({su.first, 0});
      su.slots.push_back({su.first, 1});
      for (std::uint32_t i = 1; i + 1 < su.count; ++i) su.slots.push_back({su.first + i, 1});
      su.slots.push_back({su.first + su.count - 1, 1});
      su.slots.push_back({su.first + su.count - 1, 2});
    }
    g.sp.push_back(std::move(su));
  }
  for (std::uint32_t k = 0; k < g.sp.size(); ++k) {
    const auto& su = g.sp[k];
    for (std::uint32_t i = 0; i + 1 < su.count; ++i)
      g.edges.push_back({FusionKind::Merge, k, i, k, i + 1});
    for (std::uint32_t a = 0; a < su.legs.size(); ++a) {
      const auto& leg = su.legs[a];
      if (leg.output) continue;
      const std::uint32_t t = index[leg.target];
      if (t <= k) continue;
      // Find the matching leg on the other side.
      const auto& tu = g.sp[t];
      std::uint32_t b = 0;
      while (tu.legs[b].output || index[tu.legs[b].target] != k) ++b;
      g.edges.push_back({FusionKind::Link, k, a, t, b});
    }
  }
  return g;
}

struct SearchState {
  std::vector<std::uint32_t> order;
  std::vector<std::vector<std::uint32_t>> perm;  // per spider: leg -> slot
};

/// Qubit (3u + leg) at each edge end for a given slot assignment.
void edge_qubits(const UnitGraph& g, const SearchState& st, std::vector<std::uint32_t>& qu,
                 std::vector<std::uint32_t>& qv) {
  qu.resize(g.edges.size());
  qv.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.kind == FusionKind::Merge) {
      const auto& su = g.sp[ed.s];
      qu[e] = 3 * (su.first + ed.a) + 2;
      qv[e] = 3 * (su.first + ed.b) + 0;
    } else {
      auto [uu, lu] = g.sp[ed.s].slots[st.perm[ed.s][ed.a]];
      auto [uv, lv] = g.sp[ed.t].slots[st.perm[ed.t][ed.b]];
      qu[e] = 3 * uu + lu;
      qv[e] = 3 * uv + lv;
    }
  }
}

/// Kruskal replay of an edge order into a merge hierarchy.
class Hierarchy {
 public:
  void build(std::uint32_t units, const std::vector<std::uint32_t>& order,
             const std::vector<std::uint32_t>& qu, const std::vector<std::uint32_t>& qv) {
    m_ = units;
    const std::size_t total = 2 * static_cast<std::size_t>(units) - 1;
    left_.assign(total, -1);
    right_.assign(total, -1);
    parent_.assign(total, -1);
    depth_.assign(total, 0);
    fusions_.assign(total, 0);
    uf_.resize(units);
    top_.resize(units);
    std::iota(uf_.begin(), uf_.end(), 0u);
    std::iota(top_.begin(), top_.end(), 0);
    int next = static_cast<int>(units);
    for (auto e : order) {
      const std::uint32_t a = find(qu[e] / 3), b = find(qv[e] / 3);
      if (a == b) continue;
      left_[next] = top_[a];
      right_[next] = top_[b];
      parent_[top_[a]] = next;
      parent_[top_[b]] = next;
      uf_[b] = a;
      top_[a] = next;
      ++next;
    }
    if (next != static_cast<int>(total)) throw std::logic_error("unit graph is disconnected");
    for (int v = static_cast<int>(total) - 2; v >= 0; --v) depth_[v] = depth_[parent_[v]] + 1;
    lca_.resize(qu.size());
    for (std::size_t e = 0; e < qu.size(); ++e) {
      int x = static_cast<int>(qu[e] / 3), y = static_cast<int>(qv[e] / 3);
      while (depth_[x] > depth_[y]) x = parent_[x];
      while (depth_[y] > depth_[x]) y = parent_[y];
      while (x != y) {
        x = parent_[x];
        y = parent_[y];
      }
      lca_[e] = x;
      ++fusions_[x];
    }
  }

  std::uint64_t cost() {
    cost_.assign(left_.size(), 1);
    for (std::size_t v = m_; v < left_.size(); ++v)
      cost_[v] = sat_shl(sat_add(cost_[left_[v]], cost_[right_[v]]), fusions_[v]);
    return cost_.back();
  }

  /// Child of `node` on the path up from leaf `unit`.
  int child_towards(int node, std::uint32_t unit) const {
    int x = static_cast<int>(unit);
    while (parent_[x] != node) x = parent_[x];
    return x;
  }

  std::uint32_t m_ = 0;
  std::vector<int> left_, right_, parent_, depth_, fusions_, lca_;
  std::vector<std::uint64_t> cost_;

 private:
  std::uint32_t find(std::uint32_t x) {
    while (uf_[x] != x) x = uf_[x] = uf_[uf_[x]];
    return x;
  }
  std::vector<std::uint32_t> uf_;
  std::vector<int> top_;
};

struct Evaluator {
  const UnitGraph* g;
  std::vector<std::uint32_t> qu, qv;
  Hierarchy h;

  std::uint64_t operator()(const SearchState& st) {
    if (g->units == 1) return 1;
    edge_qubits(*g, st, qu, qv);
    h.build(g->units, st.order, qu, qv);
    return h.cost();
  }
};

SearchState identity_state(const UnitGraph& g) {
  SearchState st;
  st.order.resize(g.edges.size());
  std::iota(st.order.begin(), st.order.end(), 0u);
  for (const auto& su : g.sp) {
    std::vector<std::uint32_t> p(su.legs.size());
    std::iota(p.begin(), p.end(), 0u);
    st.perm.push_back(std::move(p));
  }
  return st;
}

/// Repeatedly merge the adjacent pair with the cheapest merged cost.
SearchState greedy_start(const UnitGraph& g) {
  SearchState st = identity_state(g);
  std::vector<std::uint32_t> qu, qv;
  edge_qubits(g, st, qu, qv);
  std::vector<std::uint32_t> uf(g.units);
  std::iota(uf.begin(), uf.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::uint64_t> cost(g.units, 1);
  std::vector<char> used(g.edges.size(), 0);
  std::vector<std::uint32_t> order;
  for (std::uint32_t step = 0; step + 1 < g.units; ++step) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mult;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (used[e]) continue;
      auto a = find(qu[e] / 3), b = find(qv[e] / 3);
      if (a == b) continue;
      ++mult[{std::min(a, b), std::max(a, b)}];
    }
    std::uint64_t best = UINT64_MAX;
    std::pair<std::uint32_t, std::uint32_t> pick{0, 0};
    for (const auto& [key, n] : mult) {
      const auto c = sat_shl(sat_add(cost[key.first], cost[key.second]), n);
      if (c < best) {
        best = c;
        pick = key;
      }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (used[e]) continue;
      auto a = find(qu[e] / 3), b = find(qv[e] / 3);
      if (std::min(a, b) == pick.first && std::max(a, b) == pick.second) {
        used[e] = 1;
        order.push_back(static_cast<std::uint32_t>(e));
      }
    }
    uf[pick.second] = pick.first;
    cost[pick.first] = best;
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!used[e]) order.push_back(static_cast<std::uint32_t>(e));
  st.order = std::move(order);
  return st;
}

/// Top-down splitting into near-balanced parts by one- or two-edge cuts.
SearchState bisection_start(const UnitGraph& g) {
  SearchState st = identity_state(g);
  std::vector<std::uint32_t> qu, qv;
  edge_qubits(g, st, qu, qv);
  const std::size_t E = g.edges.size();
  std::vector<int> cut_depth(E, 0);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(g.units);
  for (std::uint32_t e = 0; e < E; ++e) {
    adj[qu[e] / 3].push_back({qv[e] / 3, e});
    adj[qv[e] / 3].push_back({qu[e] / 3, e});
  }
  std::vector<int> mark(g.units, -1), comp(g.units, -1);
  int stamp = 0;

  // Labels reachable units of the fragment avoiding removed edges.
  auto components = [&](const std::vector<std::uint32_t>& frag, std::uint32_t r1, std::uint32_t r2,
                        int tag) {
    int count = 0;
    std::vector<std::uint32_t> stack;
    for (auto u : frag) {
      if (comp[u] == tag * 4 + 0 || comp[u] == tag * 4 + 1 || comp[u] == tag * 4 + 2) continue;
      if (count == 3) return 3;
      comp[u] = tag * 4 + count;
      stack.push_back(u);
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto [y, e] : adj[x]) {
          if (e == r1 || e == r2 || mark[y] != stamp) continue;
          if (comp[y] == tag * 4 + 0 || comp[y] == tag * 4 + 1 || comp[y] == tag * 4 + 2) continue;
          comp[y] = tag * 4 + count;
          stack.push_back(y);
        }
      }
      ++count;
    }
    return count;
  };

  int tag_counter = 0;
  auto rec = [&](auto&& self, std::vector<std::uint32_t> frag, std::vector<std::uint32_t> fedges,
                 int depth) -> void {
    if (frag.size() <= 1) return;
    ++stamp;
    for (auto u : frag) mark[u] = stamp;
    std::uint64_t best = UINT64_MAX;
    std::uint32_t b1 = UINT32_MAX, b2 = UINT32_MAX;
    auto consider = [&](std::uint32_t r1, std::uint32_t r2, std::size_t n) {
      const int tag = ++tag_counter;
      if (components(frag, r1, r2, tag) != 2) return;
      std::uint64_t a = 0;
      for (auto u : frag) a += comp[u] == tag * 4;
      const std::uint64_t b = frag.size() - a;
      const auto score = sat_shl(balanced_cost(a) + balanced_cost(b), n);
      if (score < best) {
        best = score;
        b1 = r1;
        b2 = r2;
      }
    };
    for (auto e : fedges) consider(e, UINT32_MAX, 1);
    if (fedges.size() >= frag.size())
      for (std::size_t i = 0; i < fedges.size(); ++i)
        for (std::size_t j = i + 1; j < fedges.size(); ++j) consider(fedges[i], fedges[j], 2);
    std::vector<std::uint32_t> fa, fb, ea, eb;
    if (best == UINT64_MAX) {
      // No small cut: split along a BFS order.
      const std::size_t half = frag.size() / 2;
      std::vector<char> in_a(g.units, 0);
      std::vector<std::uint32_t> queue{frag[0]};
      in_a[frag[0]] = 1;
      for (std::size_t h = 0; h < queue.size() && queue.size() < half; ++h)
        for (auto [y, e] : adj[queue[h]])
          if (mark[y] == stamp && !in_a[y] && queue.size() < half) {
            in_a[y] = 1;
            queue.push_back(y);
          }
      for (auto u : frag) (in_a[u] ? fa : fb).push_back(u);
      for (auto e : fedges) {
        const bool x = in_a[qu[e] / 3], y = in_a[qv[e] / 3];
        if (x && y)
          ea.push_back(e);
        else if (!x && !y)
          eb.push_back(e);
        else
          cut_depth[e] = depth;
      }
    } else {
      const int tag = ++tag_counter;
      components(frag, b1, b2, tag);
      for (auto u : frag) (comp[u] == tag * 4 ? fa : fb).push_back(u);
      for (auto e : fedges) {
        const bool x = comp[qu[e] / 3] == tag * 4, y = comp[qv[e] / 3] == tag * 4;
        if (x && y)
          ea.push_back(e);
        else if (!x && !y)
          eb.push_back(e);
        else
          cut_depth[e] = depth;
      }
    }
    self(self, std::move(fa), std::move(ea), depth + 1);
    self(self, std::move(fb), std::move(eb), depth + 1);
  };
  std::vector<std::uint32_t> all(g.units), alle(E);
  std::iota(all.begin(), all.end(), 0u);
  std::iota(alle.begin(), alle.end(), 0u);
  rec(rec, all, alle, 0);
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](auto x, auto y) { return cut_depth[x] > cut_depth[y]; });
  return st;
}

struct RunResult {
  SearchState state;
  std::uint64_t cost = UINT64_MAX;
};

RunResult anneal(const UnitGraph& g, SearchState start, std::uint64_t steps, std::uint64_t seed) {
  Evaluator ev{&g, {}, {}, {}};
  RunResult best{start, ev(start)};
  if (g.units <= 1 || steps == 0) return best;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SearchState cur = std::move(start);
  std::uint64_t cur_cost = best.cost;
  const double t0 = 0.05 * static_cast<double>(cur_cost), t1 = 1e-4 * static_cast<double>(cur_cost);
  const double decay = std::pow(t1 / t0, 1.0 / static_cast<double>(steps));
  std::vector<std::uint32_t> multi;
  for (std::uint32_t s = 0; s < g.sp.size(); ++s)
    if (g.sp[s].count > 1) multi.push_back(s);
  const std::size_t E = cur.order.size();
  double temp = t0;
  for (std::uint64_t it = 0; it < steps; ++it, temp *= decay) {
    SearchState next = cur;
    const auto kind = rng() % 4;
    if (kind == 3 && !multi.empty()) {
      auto& p = next.perm[multi[rng() % multi.size()]];
      std::swap(p[rng() % p.size()], p[rng() % p.size()]);
    } else if (kind == 2 && E > 1) {
      const auto i = rng() % E, j = rng() % E;
      const auto v = next.order[i];
      next.order.erase(next.order.begin() + static_cast<long>(i));
      next.order.insert(next.order.begin() + static_cast<long>(j), v);
    } else if (kind == 1 && E > 1) {
      const auto i = rng() % (E - 1);
      std::swap(next.order[i], next.order[i + 1]);
    } else if (E > 1) {
      std::swap(next.order[rng() % E], next.order[rng() % E]);
    }
    const std::uint64_t c = ev(next);
    const double delta = static_cast<double>(c) - static_cast<double>(cur_cost);
    if (c <= cur_cost || unif(rng) < std::exp(-delta / temp)) {
      cur = std::move(next);
      cur_cost = c;
      if (c < best.cost) best = {cur, c};
    }
  }
  return best;
}

struct Built {
  MergeTree tree;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> qubit_map;
};

Built build_tree(const UnitGraph& g, const SearchState& st) {
  Built out;
  // Surviving slots map to target qubits.
  for (std::uint32_t s = 0; s < g.sp.size(); ++s) {
    const auto& su = g.sp[s];
    for (std::uint32_t a = 0; a < su.legs.size(); ++a) {
      if (!su.legs[a].output) continue;
      auto [u, l] = su.slots[st.perm[s][a]];
      out.qubit_map.push_back({3 * u + l, su.legs[a].target});
    }
  }
  std::sort(out.qubit_map.begin(), out.qubit_map.end());
  if (g.units == 1) {
    out.tree.add_leaf(0);
    return out;
  }
  std::vector<std::uint32_t> qu, qv;
  edge_qubits(g, st, qu, qv);
  Hierarchy h;
  h.build(g.units, st.order, qu, qv);
  std::vector<std::vector<std::size_t>> by_node(h.left_.size());
  for (std::size_t e = 0; e < qu.size(); ++e) by_node[h.lca_[e]].push_back(e);
  std::vector<std::size_t> id(h.left_.size());
  for (std::uint32_t u = 0; u < g.units; ++u) id[u] = out.tree.add_leaf(u);
  for (std::size_t v = g.units; v < h.left_.size(); ++v) {
    std::vector<FusionPair> pairs;
    for (auto e : by_node[v]) {
      const bool u_left = h.child_towards(static_cast<int>(v), qu[e] / 3) == h.left_[v];
      const auto l = u_left ? qu[e] : qv[e];
      const auto r = u_left ? qv[e] : qu[e];
      pairs.push_back({l, r, g.edges[e].kind});
    }
    id[v] = out.tree.add_merge(id[h.left_[v]], id[h.right_[v]], std::move(pairs));
  }
  return out;
}

}  // namespace

ScheduleResult optimize_schedule(const GraphState& target, const OptimizerOptions& opt) {
  if (target.num_qubits() < 3) throw ValidationError("target needs at least 3 qubits");
  if (!target.connected()) throw ValidationError("target must be connected");
  auto diagram = SpiderDiagram::from_graph(target);
  diagram.simplify();
  const UnitGraph g = build_unit_graph(diagram);

  const unsigned restarts = std::max(1u, opt.restarts);
  const std::uint64_t per = opt.budget / restarts;
  std::vector<SearchState> starts{bisection_start(g), greedy_start(g)};
  std::vector<RunResult> results(restarts);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, restarts);
  auto worker = [&](unsigned first) {
    for (unsigned r = first; r < restarts; r += threads)
      results[r] = anneal(g, starts[r % starts.size()], per, derive_seed(opt.seed, {0xC057, r}));
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  std::size_t pick = 0;
  std::vector<std::uint32_t> pick_leaves;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].cost > results[pick].cost) continue;
    auto leaves = build_tree(g, results[r].state).tree.leaf_order();
    if (r == 0 || results[r].cost < results[pick].cost || leaves < pick_leaves) {
      pick = r;
      pick_leaves = std::move(leaves);
    }
  }
  auto built = build_tree(g, results[pick].state);
  ScheduleResult out;
  out.cost = schedule_cost(built.tree);
  out.units = g.units;
  out.qubit_map = built.qubit_map;
  out.target_matched = opt.validate ? validate_schedule(built.tree, target, built.qubit_map) : false;
  out.tree = std::move(built.tree);
  if (opt.validate && !out.target_matched)
    throw std::runtime_error("no valid schedule found for target");
  return out;
}

ScheduleResult optimize_schedule(const GraphState& target, std::uint64_t budget, std::uint64_t seed) {
  OptimizerOptions o;
  o.budget = budget;
  o.seed = seed;
  return optimize_schedule(target, o);
}

}  // namespace fbqc
