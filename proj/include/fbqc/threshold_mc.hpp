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

#ifndef FBQC_THRESHOLD_MC_HPP
#define FBQC_THRESHOLD_MC_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fbqc/encoded_fusion.hpp"
#include "fbqc/random.hpp"
#include "fbqc/resource_states.hpp"

namespace fbqc {

// Edge u -> v that crosses the periodic boundary `wrap` times per axis.
struct NetworkEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::array<std::int8_t, 3> wrap{};
};

// One periodic cell: site k owns primal edge k and dual edge k. Offsets name
// the cell of v relative to the cell of u.
struct CellDefinition {
  struct Half {
    std::uint32_t u, v;
    std::array<int, 3> offset;
  };
  struct Site {
    Half primal, dual;
  };
  std::string family;
  std::uint32_t primal_nodes = 1;
  std::uint32_t dual_nodes = 1;
  std::vector<Site> sites;

  static CellDefinition from_json_file(const std::string& path);
  static CellDefinition from_json_text(const std::string& text);
  void validate() const;
};

// Simple cubic primal and dual lattices, paired edge for edge.
CellDefinition six_ring_cell();
// Directory holding network definitions: $FBQC_DATA_DIR or the build-time
// default, plus "/networks".
std::string network_data_dir();
CellDefinition load_cell(const ResourceFamily& family);

struct FusionNetwork {
  std::string family;
  std::size_t L = 0;
  std::size_t primal_nodes = 0;
  std::size_t dual_nodes = 0;
  std::vector<NetworkEdge> primal;
  std::vector<NetworkEdge> dual;

  std::size_t num_sites() const { return primal.size(); }
};

FusionNetwork build_network(const CellDefinition& cell, std::size_t L);
FusionNetwork build_network(const ResourceFamily& family, std::size_t L);

// Union-find over a periodic graph; reports when a cluster wraps.
class WrapDetector {
 public:
  explicit WrapDetector(std::size_t nodes);
  void reset();
  // Adds an edge; true once any cluster has nonzero winding.
  bool add(const NetworkEdge& e);
  bool wrapped() const { return wrapped_; }

 private:
  std::uint32_t find(std::uint32_t x, std::array<int, 3>& off);

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::array<int, 3>> off_;  // position minus parent position
  bool wrapped_ = false;
};

bool spans(std::size_t nodes, const std::vector<NetworkEdge>& edges, const std::vector<char>& erased);

struct ErasureSample {
  std::vector<EncodedOutcome> outcomes;
  std::vector<char> primal_erased;
  std::vector<char> dual_erased;
};

ErasureSample sample_erasures(const FusionNetwork& net, const EncodedFusionSampler& sampler, Rng& rng);
bool failed(const FusionNetwork& net, const ErasureSample& s);
bool sample_failure(const FusionNetwork& net, const ShorCode& code, const FusionStrategy& strategy,
                    const PhysicalFusionModel& model, Rng& rng);

struct LogisticFit {
  double a = 0.0, b = 0.0;  // f(x) = 1 / (1 + exp(-(a + b x)))
  bool ok = false;
  double operator()(double x) const;
};

// Binomial maximum likelihood.
LogisticFit fit_logistic(const std::vector<double>& x, const std::vector<std::uint64_t>& failures,
                         const std::vector<std::uint64_t>& trials);

struct ThresholdOptions {
  std::vector<std::size_t> sizes{8, 12};
  std::uint64_t trials = 2000;
  double lo = 0.0, hi = 0.1;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  unsigned grid = 9;
  unsigned bootstrap = 200;
};

struct CurvePoint {
  std::size_t L;
  double x;
  std::uint64_t failures;
  std::uint64_t trials;
};

struct ThresholdEstimate {
  bool crossed = false;
  double threshold = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
  std::vector<std::size_t> sizes;
  std::uint64_t trials = 0;
  std::vector<CurvePoint> points;
  std::string message;
};

// A trial kernel fills fail[k] for every xs[k] from one trial's generator,
// so all grid points of a trial share random numbers.
using TrialKernel = std::function<void(Rng&, const std::vector<double>& xs, std::vector<char>& fail)>;
// Called once per worker and size; kernels may keep scratch state.
using KernelFactory = std::function<TrialKernel(std::size_t L)>;

ThresholdEstimate estimate_crossing(const KernelFactory& factory, const ThresholdOptions& options);

// Loss-per-photon threshold: x is eta.
ThresholdEstimate estimate_threshold(const ResourceFamily& family, const ShorCode& code,
                                     const FusionStrategy& strategy, const PhysicalFusionModel& model,
                                     const ThresholdOptions& options);

// Control: every primal edge erased independently with probability x.
ThresholdEstimate estimate_percolation_threshold(const ResourceFamily& family, const ThresholdOptions& options);

}  // namespace fbqc

#endif
