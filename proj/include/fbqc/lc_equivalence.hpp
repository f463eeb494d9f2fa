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

#ifndef FBQC_LC_EQUIVALENCE_HPP
#define FBQC_LC_EQUIVALENCE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fbqc/graph_state.hpp"
#include "fbqc/stabilizer.hpp"

namespace fbqc {

enum class LcAnswer { Equivalent, NotEquivalent, Unknown };

/// Local-Clifford equivalence with fixed qubit labels. Solves the linear
/// system for a symplectic local map and searches the invertibility
/// constraints depth first; gives up with Unknown after `node_budget`.
LcAnswer lc_equivalent(const GraphState& a, const GraphState& b,
                       std::size_t node_budget = 2'000'000);
LcAnswer lc_equivalent(const StabilizerTableau& a, const StabilizerTableau& b,
                       std::size_t node_budget = 2'000'000);

/// Pair cut-rank matrix: r[v][w] = rank of adjacency rows {v,w} restricted
/// to the other vertices. Invariant under local complementation.
std::vector<std::vector<unsigned char>> pair_cut_ranks(const GraphState& g);

/// Searches a relabelling perm (qubit q of `a` plays qubit perm[q] of `b`)
/// under which a and b are LC-equivalent.
std::optional<std::vector<std::size_t>> lc_isomorphism(const GraphState& a, const GraphState& b,
                                                       std::size_t leaf_budget = 200'000);

bool lc_isomorphic(const GraphState& a, const GraphState& b);

}  // namespace fbqc

#endif
