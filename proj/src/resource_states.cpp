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

#include "fbqc/resource_states.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace fbqc {

namespace {

constexpr std::size_t kTableauEncodingLimit = 1024;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  out.erase(std::remove_if(out.begin(), out.end(), [](char c) { return c == '-' || c == '_'; }),
            out.end());
  return out;
}

std::uint32_t parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ValidationError("not a non-negative integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string ShorCode::str() const {
  return "{" + std::to_string(n) + "," + std::to_string(m) + "}";
}

ShorCode ShorCode::parse(std::string_view text) {
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}')
    text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ValidationError("code must look like n,m");
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  ShorCode c{parse_u32(trim(text.substr(0, comma))), parse_u32(trim(text.substr(comma + 1)))};
  c.validate();
  return c;
}

void ShorCode::validate() const {
  if (n == 0 || m == 0) throw ValidationError("Shor code needs n >= 1 and m >= 1");
}

std::string ResourceFamily::name() const {
  switch (kind) {
    case Family::FourStar:
      return "4star";
    case Family::SixRing:
      return "6ring";
    case Family::EightLD:
      return "8ld";
    case Family::BellPair:
      return "bell";
  }
  return "?";
}

ResourceFamily ResourceFamily::parse(std::string_view text) {
  const auto s = lower(text);
  ResourceFamily f;
  if (s == "4star" || s == "fourstar" || s == "star")
    f.kind = Family::FourStar;
  else if (s == "6ring" || s == "sixring" || s == "ring")
    f.kind = Family::SixRing;
  else if (s == "8ld" || s == "eightld" || s == "loopydiamond")
    f.kind = Family::EightLD;
  else if (s == "bell" || s == "bellpair" || s == "bp")
    f.kind = Family::BellPair;
  else
    throw ValidationError("unknown family '" + std::string(text) + "'");
  return f;
}

std::size_t base_size(const ResourceFamily& family) {
  switch (family.kind) {
    case Family::FourStar:
      return 4;
    case Family::SixRing:
      return 6;
    case Family::EightLD:
      return family.edges_override ? family.edges_override->num_qubits() : 8;
    case Family::BellPair:
      return 2;
  }
  return 0;
}

GraphState eight_ld_default_graph() {
  return GraphState(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 6}, {3, 7}});
}

GraphState eight_ld_ring_graph() {
  return GraphState(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 6}, {3, 7}});
}

GraphState build_base_state(const ResourceFamily& family) {
  switch (family.kind) {
    case Family::FourStar:
      return star_graph(4);
    case Family::SixRing:
      return cycle_graph(6);
    case Family::EightLD:
      if (family.edges_override) {
        if (!family.edges_override->connected())
          throw ValidationError("8-LD override graph must be connected");
        return *family.edges_override;
      }
      return eight_ld_default_graph();
    case Family::BellPair:
      return path_graph(2);
  }
  throw ValidationError("bad family");
}

StabilizerTableau shor_encoded_tableau(const GraphState& state, const ShorCode& code) {
  code.validate();
  const std::size_t n = code.n, m = code.m, nm = n * m;
  const std::size_t N = state.num_qubits() * nm;
  auto q = [&](std::size_t v, std::size_t i, std::size_t j) { return v * nm + i * m + j; };
  std::vector<PauliString> gens;
  gens.reserve(N);
  for (std::size_t v = 0; v < state.num_qubits(); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j + 1 < m; ++j) {
        PauliString p(N);
        p.z.set(q(v, i, j), true);
        p.z.set(q(v, i, j + 1), true);
        gens.push_back(std::move(p));
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      PauliString p(N);
      for (std::size_t j = 0; j < m; ++j) {
        p.x.set(q(v, i, j), true);
        p.x.set(q(v, i + 1, j), true);
      }
      gens.push_back(std::move(p));
    }
  }
  const auto adj = state.adjacency();
  for (std::size_t v = 0; v < state.num_qubits(); ++v) {
    PauliString p(N);
    for (std::size_t j = 0; j < m; ++j) p.x.set(q(v, 0, j), true);
    for (auto w : adj[v])
      for (std::size_t i = 0; i < n; ++i) p.z.set(q(w, i, 0), true);
    gens.push_back(std::move(p));
  }
  return StabilizerTableau(N, std::move(gens));
}

GraphState shor_encoding_closed_form(const GraphState& state, const ShorCode& code) {
  code.validate();
  const std::uint64_t n = code.n, m = code.m, nm = n * m;
  const std::uint64_t N = state.num_qubits() * nm;
  if (N >= (std::uint64_t{1} << 32)) throw ValidationError("encoded state too large");
  std::vector<Edge> edges;
  edges.reserve(state.num_edges() * n * n + state.num_qubits() * n * (m - 1));
  auto q = [&](std::uint64_t v, std::uint64_t i, std::uint64_t j) {
    return static_cast<std::uint32_t>(v * nm + i * m + j);
  };
  for (std::uint64_t v = 0; v < state.num_qubits(); ++v)
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 1; j < m; ++j) edges.emplace_back(q(v, i, 0), q(v, i, j));
  for (auto [u, v] : state.edges())
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t k = 0; k < n; ++k) edges.emplace_back(q(u, i, 0), q(v, k, 0));
  return GraphState(static_cast<std::size_t>(N), std::move(edges));
}

GraphState apply_shor_encoding(const GraphState& state, const ShorCode& code) {
  code.validate();
  if (code.trivial()) return state;
  if (state.num_qubits() * code.size() <= kTableauEncodingLimit)
    return shor_encoded_tableau(state, code).to_graph_form().graph;
  return shor_encoding_closed_form(state, code);
}

std::uint64_t photon_count(const ResourceFamily& family, const ShorCode& code,
                           unsigned photons_per_qubit) {
  if (photons_per_qubit != 1 && photons_per_qubit != 2)
    throw ValidationError("photons per qubit must be 1 or 2");
  return base_size(family) * code.size() * photons_per_qubit;
}

}  // namespace fbqc
