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
#include <fstream>
#include <map>
#include <queue>

#include "doctest.h"
#include "fbqc/threshold_mc.hpp"

using namespace fbqc;

namespace {

// Breadth-first search that tracks unwrapped positions; a cluster wraps iff
// some node is reached at two different positions.
bool bfs_wraps(std::size_t nodes, const std::vector<NetworkEdge>& edges, const std::vector<char>& erased) {
  struct Arc {
    std::uint32_t to;
    std::array<int, 3> w;
  };
  std::vector<std::vector<Arc>> adj(nodes);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!erased[i]) continue;
    const auto& e = edges[i];
    std::array<int, 3> w{e.wrap[0], e.wrap[1], e.wrap[2]};
    adj[e.u].push_back({e.v, w});
    adj[e.v].push_back({e.u, {-w[0], -w[1], -w[2]}});
  }
  std::vector<char> seen(nodes, 0);
  std::vector<std::array<int, 3>> pos(nodes);
  for (std::uint32_t s = 0; s < nodes; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    pos[s] = {0, 0, 0};
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty()) {
      const auto a = q.front();
      q.pop();
      for (const auto& arc : adj[a]) {
        std::array<int, 3> p{pos[a][0] + arc.w[0], pos[a][1] + arc.w[1], pos[a][2] + arc.w[2]};
        if (!seen[arc.to]) {
          seen[arc.to] = 1;
          pos[arc.to] = p;
          q.push(arc.to);
        } else if (pos[arc.to] != p) {
          return true;
        }
      }
    }
  }
  return false;
}

bool connected(std::size_t nodes, const std::vector<NetworkEdge>& edges) {
  std::vector<std::uint32_t> parent(nodes);
  for (std::uint32_t i = 0; i < nodes; ++i) parent[i] = i;
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t comps = nodes;
  for (const auto& e : edges) {
    auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

CellDefinition x_lines_cell() {
  CellDefinition c;
  c.family = "lines";
  c.sites.push_back({{0, 0, {1, 0, 0}}, {0, 0, {1, 0, 0}}});
  return c;
}

}  // namespace

TEST_CASE("six-ring network geometry") {
  for (std::size_t L : {3, 4, 6}) {
    auto net = build_network(ResourceFamily::parse("6ring"), L);
    CHECK(net.num_sites() == 3 * L * L * L);
    CHECK(net.primal_nodes == L * L * L);
    CHECK(net.dual.size() == net.primal.size());
    CHECK(connected(net.primal_nodes, net.primal));
    CHECK(connected(net.dual_nodes, net.dual));
    std::vector<int> deg(net.primal_nodes, 0);
    std::size_t wrapping = 0;
    for (const auto& e : net.primal) {
      ++deg[e.u];
      ++deg[e.v];
      wrapping += e.wrap != std::array<std::int8_t, 3>{0, 0, 0};
    }
    for (int d : deg) CHECK(d == 6);
    CHECK(wrapping == 3 * L * L);
  }
  CHECK_THROWS_AS(build_network(ResourceFamily::parse("6ring"), 2), ValidationError);
  CHECK_THROWS_AS(build_network(ResourceFamily::parse("bell"), 4), ValidationError);
}

TEST_CASE("bundled network files") {
  for (auto [name, file] : {std::pair{"4star", "four_star.json"}, std::pair{"8ld", "eight_ld.json"}}) {
    const auto cell = CellDefinition::from_json_file(network_data_dir() + "/" + file);
    for (std::size_t L : {3, 5}) {
      auto net = build_network(ResourceFamily::parse(name), L);
      CHECK(net.num_sites() == cell.sites.size() * L * L * L);
      CHECK(connected(net.primal_nodes, net.primal));
      CHECK(connected(net.dual_nodes, net.dual));
      std::vector<int> deg(net.primal_nodes, 0);
      for (const auto& e : net.primal) {
        ++deg[e.u];
        ++deg[e.v];
      }
      // Translation invariance: every node has the same degree within its
      // sublattice.
      const std::size_t per = net.primal_nodes / (L * L * L);
      for (std::size_t i = 0; i < deg.size(); ++i) CHECK(deg[i] == deg[i % per]);
    }
  }
  CHECK_THROWS_AS(CellDefinition::from_json_text("{\"schema\": 2}"), ValidationError);
  CHECK_THROWS_AS(CellDefinition::from_json_text("not json"), ValidationError);
  CHECK_THROWS_AS(CellDefinition::from_json_text(
                      R"({"schema":1,"family":"x","primal_nodes":1,"dual_nodes":1,"sites":[{"primal":[0,3,[1,0,0]],"dual":[0,0,[1,0,0]]}]})"),
                  ValidationError);
  CHECK_THROWS_AS(CellDefinition::from_json_text(
                      R"({"schema":1,"family":"x","primal_nodes":1,"dual_nodes":1,"sites":[{"primal":[0,0,[2,0,0]],"dual":[0,0,[1,0,0]]}]})"),
                  ValidationError);
}

TEST_CASE("hand-placed spanning path") {
  const std::size_t L = 5;
  auto net = build_network(six_ring_cell(), L);
  std::vector<char> erased(net.num_sites(), 0);
  // x-edges (site 0 of each cell) along the row y = z = 0.
  for (std::size_t x = 0; x < L; ++x) erased[((x * L + 0) * L + 0) * 3 + 0] = 1;
  CHECK(spans(net.primal_nodes, net.primal, erased));
  erased[((2 * L) * L) * 3] = 0;
  CHECK_FALSE(spans(net.primal_nodes, net.primal, erased));

  // A single plaquette is a contractible loop.
  std::vector<char> loop(net.num_sites(), 0);
  auto cell = [&](std::size_t x, std::size_t y, std::size_t z) { return ((x * L + y) * L + z) * 3; };
  loop[cell(1, 1, 1) + 0] = 1;  // (1,1,1)-(2,1,1)
  loop[cell(1, 1, 1) + 1] = 1;  // (1,1,1)-(1,2,1)
  loop[cell(2, 1, 1) + 1] = 1;  // (2,1,1)-(2,2,1)
  loop[cell(1, 2, 1) + 0] = 1;  // (1,2,1)-(2,2,1)
  CHECK_FALSE(spans(net.primal_nodes, net.primal, loop));
  CHECK(bfs_wraps(net.primal_nodes, net.primal, loop) == false);

  // A loop through the boundary that winds once in y.
  std::vector<char> wind(net.num_sites(), 0);
  for (std::size_t y = 0; y < L; ++y) wind[cell(L - 1, y, L - 1) + 1] = 1;
  CHECK(spans(net.primal_nodes, net.primal, wind));
}

TEST_CASE("union-find agrees with path search") {
  Rng rng(99);
  std::vector<FusionNetwork> nets = {build_network(six_ring_cell(), 3), build_network(six_ring_cell(), 4),
                                     build_network(ResourceFamily::parse("8ld"), 3),
                                     build_network(ResourceFamily::parse("4star"), 3)};
  int positives = 0;
  for (const auto& net : nets) {
    REQUIRE(net.num_sites() <= 200);
    for (int trial = 0; trial < 1000; ++trial) {
      const double p = uniform01(rng);
      std::vector<char> erased(net.num_sites());
      for (auto& e : erased) e = uniform01(rng) < p;
      const bool a = spans(net.primal_nodes, net.primal, erased);
      CHECK(a == bfs_wraps(net.primal_nodes, net.primal, erased));
      positives += a;
    }
  }
  CHECK(positives > 500);
  CHECK(positives < 3500);
}

TEST_CASE("wrapping probability of independent lines") {
  // Only x-edges: each of the L^2 lines wraps iff all L edges are erased.
  const std::size_t L = 4;
  auto net = build_network(x_lines_cell(), L);
  Rng rng(4);
  for (double q : {0.5, 0.7}) {
    const double exact = 1 - std::pow(1 - std::pow(q, L), L * L);
    const int N = 20000;
    int hits = 0;
    std::vector<char> erased(net.num_sites());
    for (int t = 0; t < N; ++t) {
      for (auto& e : erased) e = uniform01(rng) < q;
      hits += spans(net.primal_nodes, net.primal, erased);
    }
    CHECK(std::abs(hits / double(N) - exact) < 4 * std::sqrt(exact * (1 - exact) / N));
  }
}

TEST_CASE("sample_failure limits") {
  auto net = build_network(six_ring_cell(), 4);
  Rng rng(1);
  PhysicalFusionModel dark{1.0, 1, false};
  for (int i = 0; i < 20; ++i)
    CHECK(sample_failure(net, {1, 1}, FusionStrategy::randomized(), dark, rng));
  PhysicalFusionModel clean{0.0, 1, true};
  const EncodedFusionSampler sampler({1, 1}, FusionStrategy::randomized(), clean);
  for (int i = 0; i < 20; ++i) {
    auto s = sample_erasures(net, sampler, rng);
    for (std::size_t k = 0; k < net.num_sites(); ++k) {
      CHECK(s.outcomes[k] != EncodedOutcome::Neither);
      CHECK_FALSE((s.primal_erased[k] && s.dual_erased[k]));
    }
    (void)failed(net, s);
  }
}

TEST_CASE("logistic fit recovers parameters") {
  std::vector<double> x;
  std::vector<std::uint64_t> k, n;
  for (int i = 0; i <= 10; ++i) {
    const double xi = 0.2 + 0.01 * i;
    const double p = 1 / (1 + std::exp(-(-50 + 200 * xi)));
    x.push_back(xi);
    n.push_back(1000000);
    k.push_back(static_cast<std::uint64_t>(std::llround(p * 1e6)));
  }
  auto f = fit_logistic(x, k, n);
  REQUIRE(f.ok);
  CHECK(f.b == doctest::Approx(200).epsilon(1e-3));
  CHECK(-f.a / f.b == doctest::Approx(0.25).epsilon(1e-4));
  CHECK_FALSE(fit_logistic({0.1}, {1}, {2}).ok);
}

TEST_CASE("crossing estimator on a synthetic model") {
  // f_L(x) = logistic(L * 40 * (x - 0.3)): curves cross exactly at 0.3.
  KernelFactory factory = [](std::size_t L) -> TrialKernel {
    return [L](Rng& rng, const std::vector<double>& xs, std::vector<char>& fail) {
      const double u = uniform01(rng);
      for (std::size_t k = 0; k < xs.size(); ++k)
        fail[k] = u < 1 / (1 + std::exp(-double(L) * 40 * (xs[k] - 0.3)));
    };
  };
  ThresholdOptions o;
  o.sizes = {4, 8};
  o.trials = 4000;
  o.lo = 0.1;
  o.hi = 0.5;
  o.seed = 7;
  auto a = estimate_crossing(factory, o);
  REQUIRE(a.crossed);
  CHECK(a.threshold == doctest::Approx(0.3).epsilon(0.02));
  CHECK(a.ci_lo <= a.threshold);
  CHECK(a.ci_hi >= a.threshold);
  CHECK(a.threshold >= o.lo);
  CHECK(a.threshold <= o.hi);

  auto b = estimate_crossing(factory, o);
  CHECK(a.threshold == b.threshold);
  CHECK(a.ci_lo == b.ci_lo);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].failures == b.points[i].failures);

  o.threads = 3;
  auto c = estimate_crossing(factory, o);
  CHECK(a.threshold == c.threshold);

  o.lo = 0.35;
  o.hi = 0.6;
  auto none = estimate_crossing(factory, o);
  CHECK_FALSE(none.crossed);
  CHECK(none.message == "no crossing in bracket");

  o.sizes = {4};
  CHECK_THROWS_AS(estimate_crossing(factory, o), ValidationError);
  o.sizes = {4, 8};
  o.lo = 0.5;
  o.hi = 0.4;
  CHECK_THROWS_AS(estimate_crossing(factory, o), ValidationError);
}

TEST_CASE("crossing found when the coarse grid saturates on both sides") {
  // Steep curves: every coarse point is all-pass or all-fail for both sizes.
  KernelFactory factory = [](std::size_t L) -> TrialKernel {
    return [L](Rng& rng, const std::vector<double>& xs, std::vector<char>& fail) {
      const double u = uniform01(rng);
      for (std::size_t k = 0; k < xs.size(); ++k)
        fail[k] = u < 1 / (1 + std::exp(-double(L) * 60 * (xs[k] - 0.3)));
    };
  };
  ThresholdOptions o;
  o.sizes = {4, 8};
  o.trials = 4000;
  o.lo = 0.0;
  o.hi = 1.0;
  o.seed = 3;
  const auto e = estimate_crossing(factory, o);
  REQUIRE(e.crossed);
  CHECK(e.threshold == doctest::Approx(0.3).epsilon(0.03));
  o.lo = 0.4;
  CHECK_FALSE(estimate_crossing(factory, o).crossed);
}

TEST_CASE("a code that loses too much has threshold zero") {
  ThresholdOptions o;
  o.sizes = {4, 6};
  o.trials = 200;
  o.lo = 0.0;
  o.hi = 0.05;
  // Unboosted {2,1}: ZZ is lost with probability 7/16 already at zero loss,
  // far above the cubic percolation point, so the curves never cross.
  auto e = estimate_threshold(ResourceFamily::parse("6ring"), {2, 1}, FusionStrategy::randomized(),
                              PhysicalFusionModel{0.0, 1, false}, o);
  CHECK_FALSE(e.crossed);
  CHECK(e.threshold == 0.0);
  for (const auto& p : e.points)
    if (p.L == 6) CHECK(p.failures == p.trials);
}

TEST_CASE("failure curves: monotone in loss, ordered by size") {
  ThresholdOptions o;
  o.sizes = {6, 10};
  o.trials = 1500;
  o.lo = 0.0;
  o.hi = 0.08;
  o.seed = 3;
  auto e = estimate_threshold(ResourceFamily::parse("6ring"), {2, 2}, FusionStrategy::randomized(),
                              PhysicalFusionModel{0.0, 1, true}, o);
  REQUIRE(e.crossed);
  CHECK(e.threshold > 0.04);
  CHECK(e.threshold < 0.065);
  std::map<std::size_t, std::vector<CurvePoint>> by;
  for (const auto& p : e.points) by[p.L].push_back(p);
  for (auto& [L, pts] : by)
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double f0 = double(pts[i - 1].failures) / pts[i - 1].trials, f1 = double(pts[i].failures) / pts[i].trials;
      CHECK(f1 >= f0 - 3 * std::sqrt(0.25 / o.trials));
    }
  // Sign test at the bracket ends.
  auto at = [&](std::size_t L, double x) {
    for (const auto& p : by[L])
      if (p.x == x) return double(p.failures) / p.trials;
    return -1.0;
  };
  CHECK(at(10, o.lo) <= at(6, o.lo));
  CHECK(at(10, o.hi) >= at(6, o.hi));
  // Grid points a little away from the crossing on either side.
  double left = -1, right = 2;
  for (const auto& p : by[6]) {
    if (p.x < e.threshold - 0.008) left = std::max(left, p.x);
    if (p.x > e.threshold + 0.008) right = std::min(right, p.x);
  }
  CHECK(at(10, left) < at(6, left));
  CHECK(at(10, right) > at(6, right));
}

TEST_CASE("percolation control near the cubic bond threshold") {
  ThresholdOptions o;
  o.sizes = {6, 8};
  o.trials = 3000;
  o.lo = 0.2;
  o.hi = 0.3;
  o.seed = 11;
  auto e = estimate_percolation_threshold(ResourceFamily::parse("6ring"), o);
  REQUIRE(e.crossed);
  CHECK(e.threshold == doctest::Approx(0.2488).epsilon(0.04));
}
