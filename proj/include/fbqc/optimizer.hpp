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

#ifndef FBQC_OPTIMIZER_HPP
#define FBQC_OPTIMIZER_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "fbqc/cost.hpp"
#include "fbqc/graph_state.hpp"

namespace fbqc {

/// Phase-free diagram of Z spiders joined by Hadamard edges. Each target
/// qubit is an output leg of exactly one spider.
struct SpiderDiagram {
  struct Spider {
    std::vector<std::uint32_t> outputs;
    std::set<std::uint32_t> nbrs;
    bool alive = true;
    std::size_t legs() const { return outputs.size() + nbrs.size(); }
  };
  std::vector<Spider> spiders;

  static SpiderDiagram from_graph(const GraphState& g);
  /// Pendant absorption, degree-2 internal spider removal, and the
  /// bialgebra rewrite on false-twin classes, until none applies.
  void simplify();
  /// Number of 3GHZ units: sum of (legs - 2) over live spiders.
  std::size_t unit_count() const;
  std::size_t live_spiders() const;
  /// Cycle rank of the Hadamard-edge graph between live spiders.
  std::size_t cycle_rank() const;
};

struct OptimizerOptions {
  std::uint64_t budget = 1'000'000;  // annealing steps over all restarts
  std::uint64_t seed = 0;
  unsigned restarts = 16;
  unsigned threads = 0;  // 0: hardware concurrency
  bool validate = true;
};

struct ScheduleResult {
  MergeTree tree;
  CostInt cost;
  bool target_matched = false;
  std::size_t units = 0;
  /// (unit-qubit id, target qubit) for every surviving qubit.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> qubit_map;
};

ScheduleResult optimize_schedule(const GraphState& target, const OptimizerOptions& options);
ScheduleResult optimize_schedule(const GraphState& target, std::uint64_t budget, std::uint64_t seed);

/// Minimum of sum 2^depth over binary trees with k leaves; the cost floor of
/// any n = 1 schedule on k units.
std::uint64_t balanced_cost(std::uint64_t k);

}  // namespace fbqc

#endif
