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

#include "fbqc/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fbqc {

bool BitVec::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVec::dot(const BitVec& o) const {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1;
}

PauliString& PauliString::operator*=(const PauliString& o) {
  // Power of i picked up per qubit, counted word-wise.
  long plus = 0, minus = 0;
  auto& xa = x.words();
  auto& za = z.words();
  const auto& xb = o.x.words();
  const auto& zb = o.z.words();
  for (std::size_t k = 0; k < xa.size(); ++k) {
    const std::uint64_t x1 = xa[k], z1 = za[k], x2 = xb[k], z2 = zb[k];
    const std::uint64_t y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = z1 & ~x1;
    const std::uint64_t y2 = x2 & z2, xo2 = x2 & ~z2, zo2 = z2 & ~x2;
    plus += std::popcount((y1 & zo2) | (xo1 & y2) | (zo1 & xo2));
    minus += std::popcount((y1 & xo2) | (xo1 & zo2) | (zo1 & y2));
    xa[k] = x1 ^ x2;
    za[k] = z1 ^ z2;
  }
  long total = 2 * (sign ? 1 : 0) + 2 * (o.sign ? 1 : 0) + plus - minus;
  total = ((total % 4) + 4) % 4;
  if (total & 1) throw std::logic_error("product of anticommuting Paulis");
  sign = total == 2;
  return *this;
}

PauliString PauliString::parse(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  p.sign = neg;
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I':
      case '_':
        break;
      case 'X':
        p.x.set(i, true);
        break;
      case 'Z':
        p.z.set(i, true);
        break;
      case 'Y':
        p.x.set(i, true);
        p.z.set(i, true);
        break;
      default:
        throw ValidationError("bad Pauli character");
    }
  }
  return p;
}

std::string PauliString::str() const {
  std::string s(1, sign ? '-' : '+');
  for (std::size_t i = 0; i < size(); ++i) {
    const bool a = x.get(i), b = z.get(i);
    s += a ? (b ? 'Y' : 'X') : (b ? 'Z' : '_');
  }
  return s;
}

StabilizerTableau::StabilizerTableau(std::size_t num_qubits, std::vector<PauliString> gens)
    : n_(num_qubits), gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (g.size() != n_) throw std::invalid_argument("generator length mismatch");
}

void StabilizerTableau::apply_h(std::size_t q) {
  for (auto& g : gens_) {
    const bool a = g.x.get(q), b = g.z.get(q);
    if (a && b) g.sign = !g.sign;
    g.x.set(q, b);
    g.z.set(q, a);
  }
}

void StabilizerTableau::apply_s(std::size_t q) {
  for (auto& g : gens_) {
    const bool a = g.x.get(q), b = g.z.get(q);
    if (a && b) g.sign = !g.sign;
    g.z.set(q, a != b);
  }
}

void StabilizerTableau::apply_z(std::size_t q) {
  for (auto& g : gens_)
    if (g.x.get(q)) g.sign = !g.sign;
}

bool StabilizerTableau::measure(const PauliString& p) {
  std::size_t pivot = gens_.size();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (!gens_[i].commutes(p)) {
      if (pivot == gens_.size()) {
        pivot = i;
      } else {
        gens_[i] *= gens_[pivot];
      }
    }
  }
  if (pivot == gens_.size()) return false;
  gens_[pivot] = p;
  return true;
}

void StabilizerTableau::fuse_and_remove(std::size_t a, std::size_t b) {
  PauliString xx(n_), zz(n_);
  xx.x.set(a, true);
  xx.x.set(b, true);
  zz.z.set(a, true);
  zz.z.set(b, true);
  measure(xx);
  measure(zz);
  remove_qubits({a, b});
}

void StabilizerTableau::remove_qubits(const std::vector<std::size_t>& qs) {
  std::vector<char> gone(n_, 0);
  for (auto q : qs) {
    if (q >= n_ || gone[q]) throw std::invalid_argument("bad qubit list");
    gone[q] = 1;
  }
  std::vector<char> used(gens_.size(), 0);
  std::size_t pivots = 0;
  for (auto q : qs) {
    for (int part = 0; part < 2; ++part) {
      auto bit = [&](const PauliString& g) { return part ? g.z.get(q) : g.x.get(q); };
      std::size_t r = gens_.size();
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!used[i] && bit(gens_[i])) {
          r = i;
          break;
        }
      if (r == gens_.size()) continue;
      used[r] = 1;
      ++pivots;
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (i != r && bit(gens_[i])) gens_[i] *= gens_[r];
    }
  }
  if (pivots != qs.size()) throw std::logic_error("qubits are still entangled with the rest");
  std::vector<std::size_t> keep;
  for (std::size_t q = 0; q < n_; ++q)
    if (!gone[q]) keep.push_back(q);
  std::vector<PauliString> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (used[i]) continue;
    PauliString p(keep.size());
    p.sign = gens_[i].sign;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      p.x.set(k, gens_[i].x.get(keep[k]));
      p.z.set(k, gens_[i].z.get(keep[k]));
    }
    out.push_back(std::move(p));
  }
  n_ = keep.size();
  gens_ = std::move(out);
}

StabilizerTableau StabilizerTableau::tensor(const StabilizerTableau& other) const {
  const std::size_t n = n_ + other.n_;
  std::vector<PauliString> gens;
  gens.reserve(gens_.size() + other.gens_.size());
  for (const auto& g : gens_) {
    PauliString p(n);
    p.sign = g.sign;
    for (std::size_t q = 0; q < n_; ++q) {
      p.x.set(q, g.x.get(q));
      p.z.set(q, g.z.get(q));
    }
    gens.push_back(std::move(p));
  }
  for (const auto& g : other.gens_) {
    PauliString p(n);
    p.sign = g.sign;
    for (std::size_t q = 0; q < other.n_; ++q) {
      p.x.set(n_ + q, g.x.get(q));
      p.z.set(n_ + q, g.z.get(q));
    }
    gens.push_back(std::move(p));
  }
  return StabilizerTableau(n, std::move(gens));
}

StabilizerTableau StabilizerTableau::permuted(const std::vector<std::size_t>& perm) const {
  std::vector<PauliString> gens;
  for (const auto& g : gens_) {
    PauliString p(n_);
    p.sign = g.sign;
    for (std::size_t q = 0; q < n_; ++q) {
      p.x.set(perm[q], g.x.get(q));
      p.z.set(perm[q], g.z.get(q));
    }
    gens.push_back(std::move(p));
  }
  return StabilizerTableau(n_, std::move(gens));
}

namespace {

BitVec symplectic_row(const PauliString& p) {
  const std::size_t n = p.size();
  BitVec r(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    r.set(q, p.x.get(q));
    r.set(n + q, p.z.get(q));
  }
  return r;
}

}  // namespace

std::size_t gf2_rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r].get(c)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i)
      if (rows[i].get(c)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

std::size_t StabilizerTableau::rank() const {
  std::vector<BitVec> rows;
  for (const auto& g : gens_) rows.push_back(symplectic_row(g));
  return gf2_rank(std::move(rows));
}

bool StabilizerTableau::contains_up_to_sign(const PauliString& p) const {
  std::vector<BitVec> rows;
  for (const auto& g : gens_) rows.push_back(symplectic_row(g));
  const std::size_t r = gf2_rank(rows);
  rows.push_back(symplectic_row(p));
  return gf2_rank(std::move(rows)) == r;
}

bool StabilizerTableau::commuting() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!gens_[i].commutes(gens_[j])) return false;
  return true;
}

GraphForm StabilizerTableau::to_graph_form() const {
  if (gens_.size() != n_) throw std::invalid_argument("tableau is not a pure state");
  StabilizerTableau t = *this;
  auto& g = t.gens_;
  const std::size_t n = n_;
  std::vector<LocalOp> ops;

  // Row-reduce the X block.
  std::vector<char> xpivot(n, 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < n; ++c) {
    std::size_t r = rank;
    while (r < n && !g[r].x.get(c)) ++r;
    if (r == n) continue;
    std::swap(g[r], g[rank]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != rank && g[i].x.get(c)) g[i] *= g[rank];
    xpivot[c] = 1;
    ++rank;
  }
  // The Z-only rows have full rank on the non-pivot columns; Hadamards
  // there make the X block invertible.
  for (std::size_t c = 0; c < n; ++c) {
    if (xpivot[c]) continue;
    t.apply_h(c);
    ops.push_back({LocalGate::H, static_cast<std::uint32_t>(c)});
  }
  // Reduce X block to the identity, row i pivoting on column i.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && !g[r].x.get(c)) ++r;
    if (r == n) throw std::logic_error("graph-form reduction failed");
    std::swap(g[r], g[c]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && g[i].x.get(c)) g[i] *= g[c];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].z.get(i)) {
      t.apply_s(i);
      ops.push_back({LocalGate::S, static_cast<std::uint32_t>(i)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].sign) {
      t.apply_z(i);
      ops.push_back({LocalGate::Z, static_cast<std::uint32_t>(i)});
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool a = g[i].z.get(j);
      if (a != g[j].z.get(i)) throw std::logic_error("asymmetric adjacency");
      if (a) edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return GraphForm{GraphState(n, std::move(edges)), std::move(ops)};
}

StabilizerTableau graph_to_tableau(const GraphState& gs) {
  const std::size_t n = gs.num_qubits();
  std::vector<PauliString> gens(n, PauliString(n));
  for (std::size_t i = 0; i < n; ++i) gens[i].x.set(i, true);
  for (auto [u, v] : gs.edges()) {
    gens[u].z.set(v, true);
    gens[v].z.set(u, true);
  }
  return StabilizerTableau(n, std::move(gens));
}

}  // namespace fbqc
