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

#ifndef FBQC_STABILIZER_HPP
#define FBQC_STABILIZER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fbqc/graph_state.hpp"

namespace fbqc {

/// Packed GF(2) vector.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  bool any() const;
  std::size_t popcount() const;
  /// Parity of popcount(this & o).
  bool dot(const BitVec& o) const;
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::vector<std::uint64_t>& words() { return w_; }
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Hermitian Pauli operator: (-1)^sign * prod_q X^x_q Z^z_q with Y = iXZ.
struct PauliString {
  BitVec x;
  BitVec z;
  bool sign = false;

  PauliString() = default;
  explicit PauliString(std::size_t n) : x(n), z(n) {}

  std::size_t size() const { return x.size(); }
  bool is_identity() const { return !x.any() && !z.any(); }
  bool commutes(const PauliString& o) const { return x.dot(o.z) == z.dot(o.x); }
  /// Multiply in place by o (this = this * o). Both must commute.
  PauliString& operator*=(const PauliString& o);
  bool operator==(const PauliString& o) const {
    return sign == o.sign && x == o.x && z == o.z;
  }

  /// Parses "+XZI_Y" style strings; '_' and 'I' are identity.
  static PauliString parse(std::string_view text);
  std::string str() const;
};

/// Local Cliffords returned by graph-form reduction, in application order.
enum class LocalGate : std::uint8_t { H, S, Z };

struct LocalOp {
  LocalGate gate;
  std::uint32_t qubit;
  bool operator==(const LocalOp&) const = default;
};

/// Graph state plus local Cliffords: applying `ops` in order to the
/// tableau's state yields |graph>.
struct GraphForm {
  GraphState graph;
  std::vector<LocalOp> ops;
};

/// Stabilizer state as a list of commuting, independent generators.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;
  explicit StabilizerTableau(std::size_t num_qubits) : n_(num_qubits) {}
  StabilizerTableau(std::size_t num_qubits, std::vector<PauliString> gens);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return gens_; }

  void apply_h(std::size_t q);
  /// Phase gate: X -> Y, Y -> -X, Z -> Z.
  void apply_s(std::size_t q);
  void apply_z(std::size_t q);

  /// Projects onto the +1 eigenspace of p. Returns false when p was already
  /// determined by the state (state unchanged).
  bool measure(const PauliString& p);

  /// Bell-measures qubits a and b (XX then ZZ) and removes them.
  void fuse_and_remove(std::size_t a, std::size_t b);
  /// Removes qubits that are unentangled with the rest after measurement.
  /// Requires that for each q in qs, the group contains an element acting
  /// only on qs; used after fusions.
  void remove_qubits(const std::vector<std::size_t>& qs);

  /// Tensor product with another state (other's qubits appended).
  StabilizerTableau tensor(const StabilizerTableau& other) const;
  /// Relabels qubit q -> perm[q].
  StabilizerTableau permuted(const std::vector<std::size_t>& perm) const;

  /// True when p lies in the stabilizer group up to sign.
  bool contains_up_to_sign(const PauliString& p) const;
  bool commuting() const;
  std::size_t rank() const;

  GraphForm to_graph_form() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> gens_;
};

StabilizerTableau graph_to_tableau(const GraphState& g);

/// Rank over GF(2) of a list of rows (destroys input).
std::size_t gf2_rank(std::vector<BitVec> rows);

}  // namespace fbqc

#endif
