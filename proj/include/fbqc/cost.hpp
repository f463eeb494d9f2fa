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

#ifndef FBQC_COST_HPP
#define FBQC_COST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fbqc/graph_state.hpp"
#include "fbqc/resource_states.hpp"
#include "fbqc/stabilizer.hpp"

namespace fbqc {

using CostInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Merge: Bell measurement XX, ZZ on the two qubits.
/// Link:  XZ, ZX (a Hadamard on the right qubit first).
/// On graph-state leaves, Link joins the two neighbours by an edge and Merge
/// makes one neighbour absorb the other.
enum class FusionKind : std::uint8_t { Link, Merge };

struct FusionPair {
  std::uint32_t left;
  std::uint32_t right;
  FusionKind kind = FusionKind::Link;
  bool operator==(const FusionPair&) const = default;
};

/// Binary merge tree over 3GHZ units. Unit u owns qubits 3u, 3u+1, 3u+2,
/// prepared as |000> + |111>.
class MergeTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    std::uint32_t unit = 0;  // leaves only
    std::vector<FusionPair> pairs;
    bool is_leaf() const { return left < 0; }
  };

  std::size_t add_leaf(std::uint32_t unit);
  std::size_t add_merge(std::size_t left, std::size_t right, std::vector<FusionPair> pairs);
  void set_root(std::size_t r) { root_ = static_cast<int>(r); }

  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }
  std::size_t num_units() const;
  std::size_t num_fusions() const;

  /// Checks unit uniqueness, qubit ownership and single consumption.
  /// Returns the surviving qubit count. Throws ValidationError.
  std::size_t validate() const;
  /// Units in left-to-right leaf order.
  std::vector<std::uint32_t> leaf_order() const;

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

CostInt schedule_cost(const MergeTree& tree);
CostInt lower_bound(std::uint64_t final_qubits);

/// Result of running a tree with stabilizer simulation (+1 outcomes).
struct TreeExecution {
  StabilizerTableau state;
  std::vector<std::uint32_t> qubits;  // unit-qubit id of each tableau column
};
TreeExecution execute_tree(const MergeTree& tree);

/// Fuses qubit pairs of two graph states (leaf qubits only). Output labels:
/// surviving left qubits ascending, then surviving right qubits ascending.
/// The result is exact up to local Cliffords.
GraphState apply_merge(const GraphState& left, const GraphState& right,
                       const std::vector<FusionPair>& pairs);

/// True iff the tree's output is LC-equivalent to target under some
/// relabelling.
bool validate_schedule(const MergeTree& tree, const GraphState& target);
/// Same, with a fixed map from unit-qubit id to target qubit.
bool validate_schedule(const MergeTree& tree, const GraphState& target,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& qubit_map);

struct PhotonsPerFusion {
  Rational photons;
  std::string warning;
};
/// n*m qubits per arm, two arms. Depends only on the code, which is the
/// point: it ignores both the state size and how the encoding is split.
PhotonsPerFusion photons_per_encoded_fusion(const ResourceFamily& family, const ShorCode& code);

}  // namespace fbqc

#endif
