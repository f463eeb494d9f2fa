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

#ifndef FBQC_REPORTS_HPP
#define FBQC_REPORTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fbqc/cost.hpp"
#include "fbqc/resource_states.hpp"

namespace fbqc {

// One published loss-per-photon threshold.
struct ReferenceRow {
  std::string adaptivity_method;
  std::string source_ref;
  std::string fusion_network;
  std::string unencoded_state;
  std::string local_encoding;    // label as published: "{2,2}", "4-qubit OGC"
  std::optional<ShorCode> code;  // set for Shor rows only
  std::uint64_t qubit_count = 0;
  double lppt = 0.0;  // fraction
  bool boosted = false;
};

const std::vector<ReferenceRow>& load_reference_table();

// Keys: method, ref, network, state, encoding, qubits, boosted. Values match
// case-insensitively as substrings; "boosted" takes true/false.
std::vector<ReferenceRow> filter_rows(const std::vector<ReferenceRow>& rows,
                                      const std::vector<std::pair<std::string, std::string>>& predicates);

// Qubits in the unencoded state of a Shor row, if known.
std::optional<std::uint64_t> reference_base_size(const ReferenceRow& row);
std::optional<GraphState> reference_base_state(const ReferenceRow& row);

// Problems found when recomputing qubit counts; empty when consistent.
// Rows up to `build_limit` qubits are encoded explicitly.
std::vector<std::string> audit_reference_rows(const std::vector<ReferenceRow>& rows,
                                              std::uint64_t build_limit = 4096);

struct FigurePoint {
  std::string series;  // method | ref | network
  std::string method;
  double photons = 0.0;
  double lppt = 0.0;
  bool computed = false;
};

std::string series_key(const ReferenceRow& row);
std::vector<FigurePoint> figure_points(const std::vector<ReferenceRow>& rows);
// Points of each series not beaten by another with no more photons and at
// least the same threshold. Input order is preserved.
std::vector<FigurePoint> envelope(const std::vector<FigurePoint>& points);
std::string render_svg(const std::vector<FigurePoint>& points);

struct Table1Row {
  std::string family;
  ShorCode code;
  std::uint64_t qubits = 0;
  std::uint64_t published_cost = 0;
  CostInt computed_cost;
  CostInt lower_bound;
  bool target_matched = false;
  bool flagged = false;  // computed > 1.10 x published
  double published_gap() const;     // published / bound - 1
  double computed_gap() const;  // computed / bound - 1
};

struct Table1Target {
  const char* family;
  ShorCode code;
  std::uint64_t published_cost;
};
const std::vector<Table1Target>& table1_targets();

std::vector<Table1Row> report_table1(std::uint64_t budget, std::uint64_t seed, unsigned threads = 0);

}  // namespace fbqc

#endif
