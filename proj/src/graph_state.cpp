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

#include "fbqc/graph_state.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace fbqc {

GraphState::GraphState(std::size_t num_qubits, std::vector<Edge> edges)
    : n_(num_qubits), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.first == e.second)
      throw ValidationError("self-loop on qubit " + std::to_string(e.first));
    if (e.first >= n_ || e.second >= n_)
      throw ValidationError("edge endpoint out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw ValidationError("duplicate edge");
}

bool GraphState::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::vector<std::uint32_t>> GraphState::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(n_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<std::uint32_t> GraphState::degrees() const {
  std::vector<std::uint32_t> d(n_, 0);
  for (auto [u, v] : edges_) {
    ++d[u];
    ++d[v];
  }
  return d;
}

bool GraphState::connected() const {
  if (n_ == 0) return true;
  std::vector<std::uint32_t> parent(n_);
  for (std::uint32_t i = 0; i < n_; ++i) parent[i] = i;
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::size_t comps = n_;
  for (auto [u, v] : edges_) {
    auto a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

std::string GraphState::to_text() const {
  std::ostringstream out;
  out << "qubits " << n_ << '\n';
  for (auto [u, v] : edges_) out << u << ' ' << v << '\n';
  return out.str();
}

GraphState GraphState::read(std::istream& in) {
  std::string word;
  long long n = -1;
  if (!(in >> word >> n) || word != "qubits" || n < 0)
    throw ValidationError("edge list must start with 'qubits N'");
  std::vector<Edge> edges;
  long long u, v;
  while (in >> u) {
    if (!(in >> v)) throw ValidationError("dangling edge endpoint");
    if (u < 0 || v < 0) throw ValidationError("negative qubit id");
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  if (!in.eof()) throw ValidationError("unparseable edge list");
  return GraphState(static_cast<std::size_t>(n), std::move(edges));
}

GraphState GraphState::from_text(const std::string& text) {
  std::istringstream in(text);
  return read(in);
}

GraphState path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return GraphState(n, std::move(e));
}

GraphState cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, static_cast<std::uint32_t>((i + 1) % n));
  return GraphState(n, std::move(e));
}

GraphState star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return GraphState(n, std::move(e));
}

}  // namespace fbqc
