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


#include <algorithm>
#include <random>

#include "doctest.h"
#include "fbqc/reports.hpp"

using namespace fbqc;

TEST_CASE("reference table contents") {
  const auto& rows = load_reference_table();
  CHECK(rows.size() == 66);
  const auto hit = filter_rows(rows, {{"ref", "DBA"}, {"network", "6ring"}, {"encoding", "{7,4}"}});
  REQUIRE(hit.size() == 1);
  CHECK(hit[0].adaptivity_method == "Exposure based adaptivity");
  CHECK(hit[0].qubit_count == 168);
  CHECK(hit[0].lppt == doctest::Approx(0.174));
  REQUIRE(hit[0].code);
  CHECK(*hit[0].code == ShorCode{7, 4});
  CHECK(filter_rows(rows, {{"method", "no such method"}}).empty());
}

TEST_CASE("filter rejects unknown keys") {
  CHECK_THROWS_AS(filter_rows(load_reference_table(), {{"colour", "red"}}), ValidationError);
}

TEST_CASE("audit of qubit counts is clean") {
  const auto& rows = load_reference_table();
  CHECK(audit_reference_rows(rows).empty());
  auto bad = rows;
  bad[0].qubit_count += 1;
  CHECK(audit_reference_rows(bad).size() == 1);
  for (const auto& r : rows) {
    if (!r.code) continue;
    const auto base = reference_base_size(r);
    REQUIRE(base);
    CHECK(reference_base_state(r)->num_qubits() == *base);
  }
}

TEST_CASE("envelope is the per-series Pareto front") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> photons(1, 12), lppt(1, 12), series(0, 2);
  for (int round = 0; round < 200; ++round) {
    std::vector<FigurePoint> pts;
    const int n = 1 + round % 15;
    for (int i = 0; i < n; ++i) {
      const int s = series(gen);
      pts.push_back({"s" + std::to_string(s), "m", double(photons(gen)), lppt(gen) / 100.0, false});
    }
    const auto env = envelope(pts);
    // Brute force: a point survives iff nothing in its series dominates it, and
    // it is the first of any exact duplicates.
    std::vector<FigurePoint> want;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j || pts[j].series != pts[i].series) continue;
        const bool same = pts[j].photons == pts[i].photons && pts[j].lppt == pts[i].lppt;
        if (same ? j < i : (pts[j].photons <= pts[i].photons && pts[j].lppt >= pts[i].lppt)) dominated = true;
      }
      if (!dominated) want.push_back(pts[i]);
    }
    REQUIRE(env.size() == want.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
      CHECK(env[i].photons == want[i].photons);
      CHECK(env[i].lppt == want[i].lppt);
      CHECK(env[i].series == want[i].series);
    }
  }
}

TEST_CASE("published local-adaptivity 4-star front") {
  const auto rows = filter_rows(load_reference_table(), {{"ref", "songetal"}, {"network", "4star"}});
  const auto env = envelope(figure_points(rows));
  const bool found = std::any_of(env.begin(), env.end(), [](const FigurePoint& p) {
    return p.photons == 112 && std::abs(p.lppt - 0.114) < 1e-12;
  });
  CHECK(found);
  for (const auto& p : env) CHECK(p.method == "Local adaptivity");
}

TEST_CASE("svg rendering") {
  const auto empty = render_svg({});
  CHECK(empty.rfind("<svg", 0) == 0);
  CHECK(empty.find("</svg>") != std::string::npos);
  const auto pts = envelope(figure_points(load_reference_table()));
  const auto a = render_svg(pts);
  CHECK(a == render_svg(pts));
  CHECK(std::count(a.begin(), a.end(), '\n') > static_cast<long>(pts.size()));
  auto with_ours = pts;
  with_ours.push_back({"ours", "Randomized failure", 24, 0.026, true});
  CHECK(render_svg(with_ours).find("<rect x=") != std::string::npos);
}

TEST_CASE("table1 targets and bound column") {
  const auto& t = table1_targets();
  REQUIRE(t.size() == 6);
  const std::uint64_t sizes[] = {16, 24, 32, 112, 168, 224};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto fam = ResourceFamily::parse(t[i].family);
    CHECK(apply_shor_encoding(build_base_state(fam), t[i].code).num_qubits() == sizes[i]);
  }
  CHECK(lower_bound(224) == 49284);
}
