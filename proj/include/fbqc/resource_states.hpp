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

#ifndef FBQC_RESOURCE_STATES_HPP
#define FBQC_RESOURCE_STATES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fbqc/graph_state.hpp"
#include "fbqc/stabilizer.hpp"

namespace fbqc {

/// {n,m} Shor (parity) code: n blocks of m qubits.
struct ShorCode {
  std::uint32_t n = 1;
  std::uint32_t m = 1;

  std::uint64_t size() const { return std::uint64_t{n} * m; }
  bool trivial() const { return n == 1 && m == 1; }
  std::string str() const;  // "{n,m}"
  /// Accepts "n,m" or "{n,m}".
  static ShorCode parse(std::string_view text);
  void validate() const;
  bool operator==(const ShorCode&) const = default;
};

enum class Family { FourStar, SixRing, EightLD, BellPair };

struct ResourceFamily {
  Family kind = Family::FourStar;
  /// Only honoured for EightLD.
  std::optional<GraphState> edges_override;

  std::string name() const;
  static ResourceFamily parse(std::string_view text);
};

std::size_t base_size(const ResourceFamily& family);
GraphState build_base_state(const ResourceFamily& family);

/// Default 8-LD graph: a tree-like stand-in (a 6-path with leaves hung on
/// vertices 0 and 3). See README for the reasoning about this choice.
GraphState eight_ld_default_graph();
/// Ring-shaped alternative: 6-cycle with leaves on opposite vertices.
GraphState eight_ld_ring_graph();

/// Stabilizer generators of the {n,m} concatenation of a graph state.
/// Qubit (v, block i, position j) is v*n*m + i*m + j.
StabilizerTableau shor_encoded_tableau(const GraphState& state, const ShorCode& code);

/// Graph form of the encoding. Small instances reduce the concatenated
/// tableau; large ones use the closed form (centres at j = 0 joined by
/// complete bipartite blocks, pendants at j >= 1), which the tests tie to
/// the reduction.
GraphState apply_shor_encoding(const GraphState& state, const ShorCode& code);
GraphState shor_encoding_closed_form(const GraphState& state, const ShorCode& code);

std::uint64_t photon_count(const ResourceFamily& family, const ShorCode& code,
                           unsigned photons_per_qubit);

}  // namespace fbqc

#endif
