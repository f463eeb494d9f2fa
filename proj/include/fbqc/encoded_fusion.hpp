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

#ifndef FBQC_ENCODED_FUSION_HPP
#define FBQC_ENCODED_FUSION_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fbqc/random.hpp"
#include "fbqc/resource_states.hpp"
#include "fbqc/stabilizer.hpp"

namespace fbqc {

using Rational = boost::multiprecision::cpp_rational;

enum class FusionBasis : std::uint8_t { XX, ZZ };

enum class PhysicalOutcome : std::uint8_t { Both, BasisOnly, Erased };

enum class EncodedOutcome : std::uint8_t { Both, XXOnly, ZZOnly, Neither };

const char* outcome_name(EncodedOutcome o);

struct PhysicalFusionModel {
  double eta = 0.0;
  unsigned photons_per_qubit = 1;
  bool boosted = false;

  void validate() const;
  unsigned photons_per_fusion() const { return 2 * photons_per_qubit * (boosted ? 2 : 1); }
  Rational success_probability() const;
  /// 1 - (1 - eta)^photons_per_fusion, exact in the binary value of eta.
  Rational erasure_probability() const;
  /// Loss probability of one qubit measured on its own.
  Rational qubit_loss_probability() const;
};

PhysicalOutcome physical_fusion_outcome(const PhysicalFusionModel& model, FusionBasis failure_basis,
                                        Rng& rng);
/// Single-qubit measurement; false when the qubit was lost.
bool single_qubit_measurement(const PhysicalFusionModel& model, Rng& rng);

struct FusionStrategy {
  enum class Kind : std::uint8_t { Randomized, StaticBias, LocalAdaptive };
  Kind kind = Kind::Randomized;
  /// StaticBias: failure basis of each physical fusion, block-major.
  std::vector<FusionBasis> assignment;
  /// Exchange the roles of XX and ZZ in the code (X-repetitions along ZZ).
  bool swap_roles = false;

  static FusionStrategy randomized() { return {}; }
  static FusionStrategy static_bias(std::vector<FusionBasis> a) {
    return {Kind::StaticBias, std::move(a), false};
  }
  static FusionStrategy local_adaptive() { return {Kind::LocalAdaptive, {}, false}; }

  /// "randomized", "static", "adaptive". A parsed "static" has no
  /// assignment yet; see best_static_bias.
  static FusionStrategy parse(std::string_view text);
  std::string name() const;
  void validate(const ShorCode& code) const;
};

/// Assignment maximising P(both), then P(XX) + P(ZZ). Only the number of
/// XX-failing fusions per block matters, so blocks are filled in order.
std::vector<FusionBasis> best_static_bias(const ShorCode& code, const PhysicalFusionModel& model);

struct FusionOutcomeDist {
  std::array<Rational, 4> p;  // indexed by EncodedOutcome

  const Rational& operator[](EncodedOutcome o) const { return p[static_cast<int>(o)]; }
  Rational& operator[](EncodedOutcome o) { return p[static_cast<int>(o)]; }
  Rational xx() const { return p[0] + p[1]; }
  Rational zz() const { return p[0] + p[2]; }
  std::array<double, 4> to_double() const;
};

/// True iff `logical` is a product of operators from `measured` that avoid
/// `lost`, together with any element of the stabilizer group. Signs are
/// ignored.
bool recoverable(const PauliString& logical, const std::vector<PauliString>& measured,
                 const std::vector<PauliString>& stabilizers, const std::vector<std::uint32_t>& lost);

inline constexpr std::uint64_t kEnumerationLimit = 10;

/// Enumerates every outcome pattern of the n*m physical fusions (following
/// the adaptive policy where applicable) and scores each with recoverable().
FusionOutcomeDist exact_encoded_fusion_dist(const ShorCode& code, const FusionStrategy& strategy,
                                            const PhysicalFusionModel& model);

/// Same distribution from a per-block summary; no size limit.
FusionOutcomeDist encoded_fusion_dist(const ShorCode& code, const FusionStrategy& strategy,
                                      const PhysicalFusionModel& model);

/// One physical-level draw. Three uniforms per physical fusion, so draws
/// with the same generator state are coupled across eta.
EncodedOutcome sample_encoded_fusion(const ShorCode& code, const FusionStrategy& strategy,
                                     const PhysicalFusionModel& model, Rng& rng);

/// Reusable sampler: precomputes the adaptive policy once.
class EncodedFusionSampler {
 public:
  EncodedFusionSampler(const ShorCode& code, const FusionStrategy& strategy,
                       const PhysicalFusionModel& model);
  ~EncodedFusionSampler();
  EncodedFusionSampler(EncodedFusionSampler&&) noexcept;
  EncodedFusionSampler& operator=(EncodedFusionSampler&&) noexcept;

  EncodedOutcome operator()(Rng& rng) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fbqc

#endif
