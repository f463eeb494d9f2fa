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

#include <cmath>
#include <set>

#include "doctest.h"
#include "fbqc/encoded_fusion.hpp"

using namespace fbqc;

namespace {

using O = EncodedOutcome;

std::vector<FusionStrategy> strategies_for(const ShorCode& c, const PhysicalFusionModel& m) {
  return {FusionStrategy::randomized(), FusionStrategy::static_bias(best_static_bias(c, m)),
          FusionStrategy::local_adaptive()};
}

// Brute force over all products of the generators, ignoring signs.
bool brute_recoverable(const PauliString& logical, std::vector<PauliString> gens) {
  const std::size_t k = gens.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    BitVec x(logical.size()), z(logical.size());
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        x ^= gens[i].x;
        z ^= gens[i].z;
      }
    if (x == logical.x && z == logical.z) return true;
  }
  return false;
}

PauliString on(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> ps) {
  PauliString p(n);
  for (auto [q, c] : ps) {
    if (c == 'X' || c == 'Y') p.x.set(q, true);
    if (c == 'Z' || c == 'Y') p.z.set(q, true);
  }
  return p;
}

}  // namespace

TEST_CASE("physical fusion model") {
  PhysicalFusionModel m;
  CHECK(m.erasure_probability() == 0);
  CHECK(m.success_probability() == Rational(1, 2));
  CHECK(m.photons_per_fusion() == 2);
  m.boosted = true;
  CHECK(m.success_probability() == Rational(3, 4));
  CHECK(m.photons_per_fusion() == 4);

  PhysicalFusionModel l{0.1, 2, false};
  CHECK(static_cast<double>(l.erasure_probability()) == doctest::Approx(1 - std::pow(0.9, 4)).epsilon(1e-14));
  Rng rng(3);
  int erased = 0, both = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    auto o = physical_fusion_outcome(l, FusionBasis::XX, rng);
    erased += o == PhysicalOutcome::Erased;
    both += o == PhysicalOutcome::Both;
  }
  const double pe = 1 - std::pow(0.9, 4);
  CHECK(std::abs(erased / double(N) - pe) < 4 * std::sqrt(pe * (1 - pe) / N));
  const double pb = (1 - pe) / 2;
  CHECK(std::abs(both / double(N) - pb) < 4 * std::sqrt(pb * (1 - pb) / N));

  Rng r0(1);
  PhysicalFusionModel clean;
  for (int i = 0; i < 1000; ++i) CHECK(physical_fusion_outcome(clean, FusionBasis::ZZ, r0) != PhysicalOutcome::Erased);

  CHECK_THROWS_AS((PhysicalFusionModel{1.5, 1, false}.validate()), ValidationError);
  CHECK_THROWS_AS((PhysicalFusionModel{0.1, 3, false}.validate()), ValidationError);
}

TEST_CASE("recoverable examples") {
  auto xx = on(2, {{0, 'X'}, {1, 'X'}});
  CHECK(recoverable(xx, {xx}, {}, {}));
  CHECK_FALSE(recoverable(xx, {xx}, {}, {0, 1}));
  CHECK_FALSE(recoverable(xx, {}, {}, {}));
  CHECK(recoverable(xx, {on(2, {{0, 'X'}}), on(2, {{1, 'X'}})}, {}, {}));
  CHECK_FALSE(recoverable(xx, {on(2, {{0, 'X'}}), on(2, {{1, 'X'}})}, {}, {1}));

  // {2,2} ZZ recovery: pairs 0..3 (block-major), left qubit k, right 4 + k.
  std::vector<PauliString> stabs;
  for (std::size_t side : {0u, 4u}) {
    stabs.push_back(on(8, {{side, 'Z'}, {side + 1, 'Z'}}));
    stabs.push_back(on(8, {{side + 2, 'Z'}, {side + 3, 'Z'}}));
    stabs.push_back(on(8, {{side, 'X'}, {side + 1, 'X'}, {side + 2, 'X'}, {side + 3, 'X'}}));
  }
  auto zz = [](std::size_t k) { return on(8, {{k, 'Z'}, {4 + k, 'Z'}}); };
  auto zbar = on(8, {{0, 'Z'}, {2, 'Z'}, {4, 'Z'}, {6, 'Z'}});
  // Pair 3 erased, the other three measured ZZ: both blocks still covered.
  CHECK(recoverable(zbar, {zz(0), zz(1), zz(2), zz(3)}, stabs, {3, 7}));
  // Pairs 2 and 3 erased: block 1 has nothing.
  CHECK_FALSE(recoverable(zbar, {zz(0), zz(1), zz(2), zz(3)}, stabs, {2, 3, 6, 7}));
}

TEST_CASE("recoverable agrees with brute force") {
  Rng rng(17);
  std::vector<PauliString> stabs;
  for (std::size_t side : {0u, 4u}) {
    stabs.push_back(on(8, {{side, 'Z'}, {side + 1, 'Z'}}));
    stabs.push_back(on(8, {{side + 2, 'Z'}, {side + 3, 'Z'}}));
    stabs.push_back(on(8, {{side, 'X'}, {side + 1, 'X'}, {side + 2, 'X'}, {side + 3, 'X'}}));
  }
  const auto xbar = on(8, {{0, 'X'}, {1, 'X'}, {4, 'X'}, {5, 'X'}});
  const auto zbar = on(8, {{0, 'Z'}, {2, 'Z'}, {4, 'Z'}, {6, 'Z'}});
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<PauliString> measured;
    std::vector<std::uint32_t> lost;
    std::set<std::uint32_t> lost_set;
    for (std::uint32_t k = 0; k < 4; ++k) {
      switch (rng() % 6) {
        case 0: lost.push_back(k); lost.push_back(4 + k); break;
        case 1: measured.push_back(on(8, {{k, 'X'}, {4 + k, 'X'}})); measured.push_back(on(8, {{k, 'Z'}, {4 + k, 'Z'}})); break;
        case 2: measured.push_back(on(8, {{k, 'X'}, {4 + k, 'X'}})); break;
        case 3: measured.push_back(on(8, {{k, 'Z'}, {4 + k, 'Z'}})); break;
        case 4: measured.push_back(on(8, {{k, 'Z'}})); measured.push_back(on(8, {{4 + k, 'Z'}})); break;
        default: measured.push_back(on(8, {{k, 'X'}})); lost.push_back(4 + k); break;
      }
    }
    for (auto q : lost) lost_set.insert(q);
    std::vector<PauliString> gens = stabs;
    for (const auto& m : measured) {
      bool ok = true;
      for (auto q : lost_set) ok = ok && !m.x.get(q) && !m.z.get(q);
      if (ok) gens.push_back(m);
    }
    CHECK(recoverable(xbar, measured, stabs, lost) == brute_recoverable(xbar, gens));
    CHECK(recoverable(zbar, measured, stabs, lost) == brute_recoverable(zbar, gens));
  }
}

TEST_CASE("exact distribution examples") {
  PhysicalFusionModel clean;
  auto d = exact_encoded_fusion_dist({1, 1}, FusionStrategy::static_bias({FusionBasis::ZZ}), clean);
  CHECK(d[O::Both] == Rational(1, 2));
  CHECK(d[O::ZZOnly] == Rational(1, 2));
  CHECK(d[O::XXOnly] == 0);

  PhysicalFusionModel dark{1.0, 1, false};
  for (const auto& s : strategies_for({1, 1}, dark))
    CHECK(exact_encoded_fusion_dist({1, 1}, s, dark)[O::Neither] == 1);

  // Hand count for {2,2}: each block gives (full XX, some ZZ) with
  // probabilities 8/16, (XX only) 1/16, (ZZ only) 7/16.
  auto g = exact_encoded_fusion_dist({2, 2}, FusionStrategy::randomized(), clean);
  CHECK(g[O::Both] == Rational(176, 256));
  CHECK(g[O::XXOnly] == Rational(31, 256));
  CHECK(g[O::ZZOnly] == Rational(49, 256));
  CHECK(g[O::Neither] == 0);

  CHECK_THROWS_AS(exact_encoded_fusion_dist({11, 1}, FusionStrategy::randomized(), clean), ValidationError);
  CHECK_THROWS_AS(exact_encoded_fusion_dist({3, 4}, FusionStrategy::randomized(), clean), ValidationError);
  CHECK_THROWS_AS(exact_encoded_fusion_dist({2, 2}, FusionStrategy::static_bias({FusionBasis::XX}), clean),
                  ValidationError);
}

TEST_CASE("enumeration oracle matches the block summary") {
  for (ShorCode c : {ShorCode{1, 1}, ShorCode{2, 1}, ShorCode{1, 2}, ShorCode{2, 2}, ShorCode{3, 2},
                     ShorCode{2, 3}, ShorCode{4, 1}}) {
    for (double eta : {0.0, 0.05, 0.2}) {
      for (unsigned ppq : {1u, 2u}) {
        for (bool boosted : {false, true}) {
          PhysicalFusionModel m{eta, ppq, boosted};
          for (auto s : strategies_for(c, m)) {
            for (bool swap : {false, true}) {
              s.swap_roles = swap;
              const auto a = exact_encoded_fusion_dist(c, s, m);
              const auto b = encoded_fusion_dist(c, s, m);
              INFO(c.str(), " ", s.name(), " eta=", eta, " ppq=", ppq, " boosted=", boosted);
              CHECK(a.p == b.p);
              CHECK(a.p[0] + a.p[1] + a.p[2] + a.p[3] == 1);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("sampler matches the exact distribution") {
  const int N = 1000000;
  for (double eta : {0.0, 0.05, 0.2}) {
    PhysicalFusionModel m{eta, 1, true};
    for (const auto& s : strategies_for({2, 2}, m)) {
      const auto exact = exact_encoded_fusion_dist({2, 2}, s, m).to_double();
      EncodedFusionSampler sampler({2, 2}, s, m);
      Rng rng(derive_seed(5, {static_cast<std::uint64_t>(eta * 100)}));
      std::array<int, 4> counts{};
      for (int i = 0; i < N; ++i) ++counts[static_cast<int>(sampler(rng))];
      for (int k = 0; k < 4; ++k) {
        const double se = std::sqrt(exact[k] * (1 - exact[k]) / N);
        INFO(s.name(), " eta=", eta, " k=", k);
        CHECK(std::abs(counts[k] / double(N) - exact[k]) <= 3 * se);
      }
    }
  }
}

TEST_CASE("clean {1,1} fusions always return something") {
  PhysicalFusionModel clean;
  Rng rng(2);
  for (const auto& s : strategies_for({1, 1}, clean))
    for (int i = 0; i < 10000; ++i) CHECK(sample_encoded_fusion({1, 1}, s, clean, rng) != O::Neither);
}

TEST_CASE("loss never helps") {
  for (ShorCode c : {ShorCode{1, 1}, ShorCode{2, 1}, ShorCode{2, 2}, ShorCode{3, 2}}) {
    for (unsigned ppq : {1u, 2u}) {
      for (int kind = 0; kind < 3; ++kind) {
        Rational prev(-1);
        for (int step = 0; step <= 20; ++step) {
          PhysicalFusionModel m{step * 0.025, ppq, true};
          FusionStrategy s = kind == 0   ? FusionStrategy::randomized()
                             : kind == 1 ? FusionStrategy::static_bias(best_static_bias(c, PhysicalFusionModel{}))
                                         : FusionStrategy::local_adaptive();
          const auto d = encoded_fusion_dist(c, s, m);
          CHECK(d[O::Neither] >= prev);
          prev = d[O::Neither];
        }
      }
    }
  }
}

TEST_CASE("encoding helps at zero loss") {
  PhysicalFusionModel clean;
  const auto bare = exact_encoded_fusion_dist({1, 1}, FusionStrategy::randomized(), clean);
  const auto enc = exact_encoded_fusion_dist({2, 2}, FusionStrategy::randomized(), clean);
  CHECK(enc[O::Both] > bare[O::Both]);
}

TEST_CASE("{1,1} is the bare physical fusion") {
  for (double eta : {0.0, 0.01, 0.3}) {
    for (bool boosted : {false, true}) {
      PhysicalFusionModel m{eta, 2, boosted};
      const Rational pe = m.erasure_probability(), ps = m.success_probability();
      const auto r = encoded_fusion_dist({1, 1}, FusionStrategy::randomized(), m);
      CHECK(r[O::Both] == (1 - pe) * ps);
      CHECK(r[O::XXOnly] == (1 - pe) * (1 - ps) / 2);
      CHECK(r[O::ZZOnly] == (1 - pe) * (1 - ps) / 2);
      CHECK(r[O::Neither] == pe);
      const auto z = encoded_fusion_dist({1, 1}, FusionStrategy::static_bias({FusionBasis::ZZ}), m);
      CHECK(z[O::ZZOnly] == (1 - pe) * (1 - ps));
      CHECK(z[O::XXOnly] == 0);
      const auto a = encoded_fusion_dist({1, 1}, FusionStrategy::local_adaptive(), m);
      CHECK(a[O::Both] == (1 - pe) * ps);
      CHECK(a[O::Neither] == pe);
    }
  }
}

TEST_CASE("role exchange swaps XX and ZZ") {
  for (double eta : {0.0, 0.05, 0.2}) {
    PhysicalFusionModel m{eta, 1, true};
    const auto a = encoded_fusion_dist({2, 1}, FusionStrategy::randomized(), m);
    const auto b = encoded_fusion_dist({1, 2}, FusionStrategy::randomized(), m);
    CHECK(a.xx() == b.zz());
    CHECK(a.zz() == b.xx());
    CHECK(a[O::Both] == b[O::Both]);
    const auto sa = encoded_fusion_dist({2, 1}, FusionStrategy::static_bias(best_static_bias({2, 1}, m)), m);
    const auto sb = encoded_fusion_dist({1, 2}, FusionStrategy::static_bias(best_static_bias({1, 2}, m)), m);
    CHECK(sa[O::Both] == sb[O::Both]);

    auto flipped = FusionStrategy::randomized();
    flipped.swap_roles = true;
    const auto f = encoded_fusion_dist({2, 1}, flipped, m);
    CHECK(f.xx() == a.zz());
    CHECK(f.zz() == a.xx());
  }
}

TEST_CASE("adaptivity is at least as good as any static bias") {
  for (ShorCode c : {ShorCode{2, 2}, ShorCode{3, 2}, ShorCode{2, 3}, ShorCode{4, 3}}) {
    for (double eta : {0.0, 0.02, 0.1}) {
      PhysicalFusionModel m{eta, 1, false};
      const auto a = encoded_fusion_dist(c, FusionStrategy::local_adaptive(), m);
      const auto s = encoded_fusion_dist(c, FusionStrategy::static_bias(best_static_bias(c, m)), m);
      const auto r = encoded_fusion_dist(c, FusionStrategy::randomized(), m);
      CHECK(a[O::Both] >= s[O::Both]);
      CHECK(a[O::Both] >= r[O::Both]);
    }
  }
}

TEST_CASE("strategy parsing") {
  CHECK(FusionStrategy::parse("Randomized").kind == FusionStrategy::Kind::Randomized);
  CHECK(FusionStrategy::parse("static-bias").kind == FusionStrategy::Kind::StaticBias);
  CHECK(FusionStrategy::parse("local_adaptive").kind == FusionStrategy::Kind::LocalAdaptive);
  CHECK_THROWS_AS(FusionStrategy::parse("global"), ValidationError);
  CHECK(best_static_bias({3, 2}, PhysicalFusionModel{}).size() == 6);
}
