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

#ifndef FBQC_GRAPH_STATE_HPP
#define FBQC_GRAPH_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbqc {

/// Raised for malformed user input; the CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Undirected simple graph on qubits 0..N-1. Edges are stored with u < v,
/// sorted and unique.
class GraphState {
 public:
  GraphState() = default;
  GraphState(std::size_t num_qubits, std::vector<Edge> edges);

  std::size_t num_qubits() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  std::vector<std::vector<std::uint32_t>> adjacency() const;
  std::vector<std::uint32_t> degrees() const;
  bool connected() const;

  /// `qubits N` followed by one `u v` line per edge.
  std::string to_text() const;
  static GraphState from_text(const std::string& text);
  static GraphState read(std::istream& in);

  bool operator==(const GraphState& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

GraphState path_graph(std::size_t n);
GraphState cycle_graph(std::size_t n);
GraphState star_graph(std::size_t n);

}  // namespace fbqc

#endif
