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

#include "fbqc/encoded_fusion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>

namespace fbqc {

namespace {

// Subspaces of GF(2)^2 as sets of vectors; vector v = a | b << 1 with a on
// the left code block and b on the right one.
constexpr std::uint8_t kZero = 0b0001;
constexpr std::uint8_t kDiag = 0b1001;
constexpr std::uint8_t kLeft = 0b0011;
constexpr std::uint8_t kRight = 0b0101;
constexpr std::uint8_t kFull = 0b1111;
constexpr std::uint8_t kBoth = 0b1000;  // contains (1,1)

std::uint8_t span_sum(std::uint8_t a, std::uint8_t b) {
  std::uint8_t r = 0;
  for (int u = 0; u < 4; ++u)
    if (a >> u & 1)
      for (int v = 0; v < 4; ++v)
        if (b >> v & 1) r |= static_cast<std::uint8_t>(1u << (u ^ v));
  return r;
}

enum class Action : std::uint8_t { FuseFailXX, FuseFailZZ, SingleZ, SingleX, FuseRandom };

// Measurement record of one physical pair.
enum Flag : std::uint8_t {
  kXX = 1, kZZ = 2, kXl = 4, kXr = 8, kZl = 16, kZr = 32, kLostL = 64, kLostR = 128
};

struct Event {
  std::uint8_t flags;
  std::uint8_t v;  // X-type span
  std::uint8_t w;  // Z-type span
};

struct Probs {
  Rational pe, ps, pl;
};

// Events of an action with their probabilities.
std::vector<std::pair<Rational, Event>> events(Action a, const Probs& pr) {
  const Rational one(1);
  std::vector<std::pair<Rational, Event>> out;
  const std::uint8_t lost = kLostL | kLostR;
  switch (a) {
    case Action::FuseFailXX:
    case Action::FuseFailZZ:
    case Action::FuseRandom: {
      out.push_back({pr.pe, {lost, kZero, kZero}});
      const Rational ok = one - pr.pe;
      out.push_back({ok * pr.ps, {kXX | kZZ, kDiag, kDiag}});
      const Rational fail = ok * (one - pr.ps);
      if (a == Action::FuseRandom) {
        out.push_back({fail / 2, {kXX, kDiag, kZero}});
        out.push_back({fail / 2, {kZZ, kZero, kDiag}});
      } else if (a == Action::FuseFailXX) {
        out.push_back({fail, {kXX, kDiag, kZero}});
      } else {
        out.push_back({fail, {kZZ, kZero, kDiag}});
      }
      break;
    }
    case Action::SingleX:
    case Action::SingleZ: {
      const bool x = a == Action::SingleX;
      const Rational keep = one - pr.pl;
      const std::uint8_t fl = x ? kXl : kZl, fr = x ? kXr : kZr;
      auto ev = [&](std::uint8_t flags, std::uint8_t span) {
        return x ? Event{flags, span, kZero} : Event{flags, kZero, span};
      };
      out.push_back({keep * keep, ev(fl | fr, kFull)});
      out.push_back({keep * pr.pl, ev(fl | kLostR, kLeft)});
      out.push_back({pr.pl * keep, ev(fr | kLostL, kRight)});
      out.push_back({pr.pl * pr.pl, ev(lost, kZero)});
      break;
    }
  }
  return out;
}

// Running summary: X span of finished blocks, X intersection and Z span of
// the current block, and whether every finished block had its ZZ.
struct Summary {
  std::uint8_t xdone = kZero;
  std::uint8_t ucur = kFull;
  std::uint8_t wcur = kZero;
  bool zok = true;

  std::uint32_t key() const {
    return static_cast<std::uint32_t>(xdone) | static_cast<std::uint32_t>(ucur) << 4 |
           static_cast<std::uint32_t>(wcur) << 8 | static_cast<std::uint32_t>(zok) << 12;
  }
  static Summary from_key(std::uint32_t k) {
    return {static_cast<std::uint8_t>(k & 15), static_cast<std::uint8_t>(k >> 4 & 15),
            static_cast<std::uint8_t>(k >> 8 & 15), (k >> 12 & 1) != 0};
  }
  Summary after(const Event& e, bool block_end) const {
    Summary s = *this;
    s.ucur = static_cast<std::uint8_t>(s.ucur & e.v);
    s.wcur = span_sum(s.wcur, e.w);
    if (block_end) {
      s.xdone = span_sum(s.xdone, s.ucur);
      s.zok = s.zok && (s.wcur & kBoth);
      s.ucur = kFull;
      s.wcur = kZero;
    }
    return s;
  }
  bool x_recovered() const { return xdone & kBoth; }
};

EncodedOutcome classify(bool x, bool z) {
  if (x && z) return EncodedOutcome::Both;
  if (x) return EncodedOutcome::XXOnly;
  if (z) return EncodedOutcome::ZZOnly;
  return EncodedOutcome::Neither;
}

Rational exact_from_double(double v) {
  Rational r;
  r = v;  // exact: every double is a dyadic rational
  return r;
}

Rational rpow(const Rational& b, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Policy and per-pair actions for one (code, strategy, model).
class Engine {
 public:
  Engine(const ShorCode& code, const FusionStrategy& strategy, const PhysicalFusionModel& model)
      : n_(code.n), m_(code.m), strategy_(strategy) {
    code.validate();
    model.validate();
    strategy.validate(code);
    pr_ = {model.erasure_probability(), model.success_probability(), model.qubit_loss_probability()};
    for (auto a : {Action::FuseFailXX, Action::FuseFailZZ, Action::SingleZ, Action::SingleX,
                   Action::FuseRandom})
      events_[static_cast<int>(a)] = events(a, pr_);
    memo_.resize(n_ * m_ + 1);
  }

  std::size_t pairs() const { return n_ * m_; }
  bool block_end(std::size_t t) const { return t % m_ == m_ - 1; }
  const std::vector<std::pair<Rational, Event>>& events_of(Action a) const {
    return events_[static_cast<int>(a)];
  }
  const Probs& probs() const { return pr_; }

  Action action(std::size_t t, const Summary& s) {
    switch (strategy_.kind) {
      case FusionStrategy::Kind::Randomized:
        return Action::FuseRandom;
      case FusionStrategy::Kind::StaticBias:
        return strategy_.assignment[t] == FusionBasis::XX ? Action::FuseFailXX : Action::FuseFailZZ;
      case FusionStrategy::Kind::LocalAdaptive:
        return solve(t, s).best;
    }
    return Action::FuseRandom;
  }

  FusionOutcomeDist distribution() {
    FusionOutcomeDist d;
    std::map<std::uint32_t, Rational> cur{{Summary{}.key(), Rational(1)}};
    for (std::size_t t = 0; t < pairs(); ++t) {
      std::map<std::uint32_t, Rational> next;
      for (const auto& [k, p] : cur) {
        const Summary s = Summary::from_key(k);
        for (const auto& [q, e] : events_of(action(t, s))) {
          if (q == 0) continue;
          next[s.after(e, block_end(t)).key()] += p * q;
        }
      }
      cur = std::move(next);
    }
    for (const auto& [k, p] : cur) {
      const Summary s = Summary::from_key(k);
      d[classify(s.x_recovered(), s.zok)] += p;
    }
    return d;
  }

 private:
  struct Value {
    Rational both, marginals;
    Action best = Action::FuseFailXX;
  };

  bool singles_allowed(std::size_t t, const Summary& s) const {
    if (s.x_recovered() || !s.zok) return true;
    const bool more_blocks = t / m_ + 1 < n_;
    const auto reach = span_sum(span_sum(s.xdone, s.ucur), more_blocks ? kFull : kZero);
    return !(reach & kBoth);
  }

  const Value& solve(std::size_t t, const Summary& s) {
    auto& slot = memo_[t];
    if (auto it = slot.find(s.key()); it != slot.end()) return it->second;
    Value v;
    if (t == pairs()) {
      const int x = s.x_recovered(), z = s.zok;
      v.both = x && z;
      v.marginals = x + z;
    } else {
      bool first = true;
      const bool singles = singles_allowed(t, s);
      for (auto a : {Action::FuseFailXX, Action::FuseFailZZ, Action::SingleZ, Action::SingleX}) {
        if (!singles && (a == Action::SingleX || a == Action::SingleZ)) continue;
        Rational both(0), marg(0);
        for (const auto& [q, e] : events_of(a)) {
          if (q == 0) continue;
          const Value& nv = solve(t + 1, s.after(e, block_end(t)));
          both += q * nv.both;
          marg += q * nv.marginals;
        }
        if (first || both > v.both || (both == v.both && marg > v.marginals)) {
          v.both = both;
          v.marginals = marg;
          v.best = a;
          first = false;
        }
      }
    }
    return slot.emplace(s.key(), std::move(v)).first->second;
  }

  std::size_t n_, m_;
  FusionStrategy strategy_;
  Probs pr_;
  std::array<std::vector<std::pair<Rational, Event>>, 5> events_;
  std::vector<std::unordered_map<std::uint32_t, Value>> memo_;
};

// Strategy with roles exchanged back to the standard orientation.
FusionStrategy standard_orientation(const FusionStrategy& s) {
  FusionStrategy r = s;
  if (s.swap_roles) {
    for (auto& b : r.assignment) b = b == FusionBasis::XX ? FusionBasis::ZZ : FusionBasis::XX;
    r.swap_roles = false;
  }
  return r;
}

EncodedOutcome swap_outcome(EncodedOutcome o) {
  if (o == EncodedOutcome::XXOnly) return EncodedOutcome::ZZOnly;
  if (o == EncodedOutcome::ZZOnly) return EncodedOutcome::XXOnly;
  return o;
}

FusionOutcomeDist swapped(FusionOutcomeDist d) {
  std::swap(d.p[1], d.p[2]);
  return d;
}

std::string lower_alpha(std::string_view s) {
  std::string r;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      r.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return r;
}

}  // namespace

const char* outcome_name(EncodedOutcome o) {
  switch (o) {
    case EncodedOutcome::Both: return "both";
    case EncodedOutcome::XXOnly: return "xx_only";
    case EncodedOutcome::ZZOnly: return "zz_only";
    case EncodedOutcome::Neither: return "neither";
  }
  return "?";
}

void PhysicalFusionModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in [0, 1]");
  if (photons_per_qubit != 1 && photons_per_qubit != 2)
    throw ValidationError("photons_per_qubit must be 1 or 2");
}

Rational PhysicalFusionModel::success_probability() const {
  return boosted ? Rational(3, 4) : Rational(1, 2);
}

Rational PhysicalFusionModel::erasure_probability() const {
  return 1 - rpow(1 - exact_from_double(eta), photons_per_fusion());
}

Rational PhysicalFusionModel::qubit_loss_probability() const {
  return 1 - rpow(1 - exact_from_double(eta), photons_per_qubit);
}

PhysicalOutcome physical_fusion_outcome(const PhysicalFusionModel& model, FusionBasis, Rng& rng) {
  const double pe = 1.0 - std::pow(1.0 - model.eta, model.photons_per_fusion());
  const double ps = model.boosted ? 0.75 : 0.5;
  if (uniform01(rng) < pe) return PhysicalOutcome::Erased;
  return uniform01(rng) < ps ? PhysicalOutcome::Both : PhysicalOutcome::BasisOnly;
}

bool single_qubit_measurement(const PhysicalFusionModel& model, Rng& rng) {
  const double pl = 1.0 - std::pow(1.0 - model.eta, model.photons_per_qubit);
  return !(uniform01(rng) < pl);
}

FusionStrategy FusionStrategy::parse(std::string_view text) {
  const auto s = lower_alpha(text);
  if (s == "randomized" || s == "randomizedfailure" || s == "random") return randomized();
  if (s == "static" || s == "staticbias") return {Kind::StaticBias, {}, false};
  if (s == "adaptive" || s == "localadaptive" || s == "local") return local_adaptive();
  throw ValidationError("unknown strategy: " + std::string(text));
}

std::string FusionStrategy::name() const {
  std::string base = kind == Kind::Randomized ? "randomized"
                     : kind == Kind::StaticBias ? "static"
                                                : "adaptive";
  return swap_roles ? base + "-swapped" : base;
}

void FusionStrategy::validate(const ShorCode& code) const {
  if (kind == Kind::StaticBias && assignment.size() != code.size())
    throw ValidationError("static assignment must cover all " + std::to_string(code.size()) +
                          " physical fusions");
}

std::array<double, 4> FusionOutcomeDist::to_double() const {
  std::array<double, 4> r{};
  for (int i = 0; i < 4; ++i) r[i] = static_cast<double>(p[i]);
  return r;
}

std::vector<FusionBasis> best_static_bias(const ShorCode& code, const PhysicalFusionModel& model) {
  code.validate();
  std::vector<FusionBasis> best;
  Rational best_both(-1), best_marg(-1);
  std::vector<std::uint32_t> counts(code.n, 0);
  // Nondecreasing XX-failure counts per block.
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t lo) {
    if (i == code.n) {
      std::vector<FusionBasis> a;
      for (auto c : counts)
        for (std::uint32_t j = 0; j < code.m; ++j)
          a.push_back(j < c ? FusionBasis::XX : FusionBasis::ZZ);
      const auto d = encoded_fusion_dist(code, FusionStrategy::static_bias(a), model);
      const Rational both = d[EncodedOutcome::Both], marg = d.xx() + d.zz();
      if (both > best_both || (both == best_both && marg > best_marg)) {
        best_both = both;
        best_marg = marg;
        best = std::move(a);
      }
      return;
    }
    for (std::uint32_t c = lo; c <= code.m; ++c) {
      counts[i] = c;
      rec(i + 1, c);
    }
  };
  rec(0, 0);
  return best;
}

bool recoverable(const PauliString& logical, const std::vector<PauliString>& measured,
                 const std::vector<PauliString>& stabilizers, const std::vector<std::uint32_t>& lost) {
  const std::size_t n = logical.size();
  BitVec lost_mask(n);
  for (auto q : lost) {
    if (q >= n) throw ValidationError("lost qubit out of range");
    lost_mask.set(q, true);
  }
  auto pack = [&](const PauliString& p) {
    if (p.size() != n) throw ValidationError("operators act on different registers");
    BitVec v(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      if (p.x.get(q)) v.set(q, true);
      if (p.z.get(q)) v.set(n + q, true);
    }
    return v;
  };
  auto lowest = [](const BitVec& v) -> std::size_t {
    const auto& w = v.words();
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k]) return 64 * k + static_cast<std::size_t>(__builtin_ctzll(w[k]));
    return SIZE_MAX;
  };
  // Basis kept with distinct lowest set bits.
  std::vector<std::pair<std::size_t, BitVec>> basis;
  auto reduce = [&](BitVec v) {
    for (bool changed = true; changed;) {
      changed = false;
      const auto lo = lowest(v);
      if (lo == SIZE_MAX) break;
      for (const auto& [piv, row] : basis)
        if (piv == lo) {
          v ^= row;
          changed = true;
          break;
        }
    }
    return v;
  };
  auto insert = [&](const PauliString& p) {
    auto v = reduce(pack(p));
    const auto lo = lowest(v);
    if (lo != SIZE_MAX) basis.emplace_back(lo, std::move(v));
  };
  for (const auto& m : measured) {
    bool touches = false;
    for (std::size_t k = 0; k < lost_mask.words().size(); ++k)
      if ((m.x.words()[k] | m.z.words()[k]) & lost_mask.words()[k]) touches = true;
    if (!touches) insert(m);
  }
  for (const auto& s : stabilizers) insert(s);
  return !reduce(pack(logical)).any();
}

FusionOutcomeDist exact_encoded_fusion_dist(const ShorCode& code, const FusionStrategy& strategy,
                                            const PhysicalFusionModel& model) {
  code.validate();
  if (code.size() > kEnumerationLimit)
    throw ValidationError("exact enumeration needs n*m <= " + std::to_string(kEnumerationLimit));
  if (strategy.swap_roles) return swapped(exact_encoded_fusion_dist(code, standard_orientation(strategy), model));

  Engine engine(code, strategy, model);
  const std::size_t nm = code.size(), N = 2 * nm;
  // Left qubit of pair k is k, right qubit is nm + k; pair k = block * m + j.
  std::vector<PauliString> stabs;
  for (std::size_t side : {std::size_t{0}, nm}) {
    for (std::size_t i = 0; i < code.n; ++i)
      for (std::size_t j = 0; j + 1 < code.m; ++j) {
        PauliString p(N);
        p.z.set(side + i * code.m + j, true);
        p.z.set(side + i * code.m + j + 1, true);
        stabs.push_back(p);
      }
    for (std::size_t i = 0; i + 1 < code.n; ++i) {
      PauliString p(N);
      for (std::size_t j = 0; j < 2 * code.m; ++j) p.x.set(side + i * code.m + j, true);
      stabs.push_back(p);
    }
  }
  PauliString xbar(N), zbar(N);
  for (std::size_t j = 0; j < code.m; ++j) {
    xbar.x.set(j, true);
    xbar.x.set(nm + j, true);
  }
  for (std::size_t i = 0; i < code.n; ++i) {
    zbar.z.set(i * code.m, true);
    zbar.z.set(nm + i * code.m, true);
  }

  FusionOutcomeDist d;
  std::vector<PauliString> measured;
  std::vector<std::uint32_t> lost;
  std::function<void(std::size_t, const Summary&, const Rational&)> rec =
      [&](std::size_t t, const Summary& s, const Rational& p) {
        if (t == nm) {
          d[classify(recoverable(xbar, measured, stabs, lost), recoverable(zbar, measured, stabs, lost))] += p;
          return;
        }
        const auto l = static_cast<std::uint32_t>(t), r = static_cast<std::uint32_t>(nm + t);
        for (const auto& [q, e] : engine.events_of(engine.action(t, s))) {
          if (q == 0) continue;
          const auto m0 = measured.size(), l0 = lost.size();
          auto op = [&](bool xl, bool zl, bool xr, bool zr) {
            PauliString o(N);
            o.x.set(l, xl);
            o.z.set(l, zl);
            o.x.set(r, xr);
            o.z.set(r, zr);
            measured.push_back(o);
          };
          if (e.flags & kXX) op(true, false, true, false);
          if (e.flags & kZZ) op(false, true, false, true);
          if (e.flags & kXl) op(true, false, false, false);
          if (e.flags & kXr) op(false, false, true, false);
          if (e.flags & kZl) op(false, true, false, false);
          if (e.flags & kZr) op(false, false, false, true);
          if (e.flags & kLostL) lost.push_back(l);
          if (e.flags & kLostR) lost.push_back(r);
          rec(t + 1, s.after(e, engine.block_end(t)), p * q);
          measured.resize(m0);
          lost.resize(l0);
        }
      };
  rec(0, Summary{}, Rational(1));
  return d;
}

FusionOutcomeDist encoded_fusion_dist(const ShorCode& code, const FusionStrategy& strategy,
                                      const PhysicalFusionModel& model) {
  if (strategy.swap_roles) return swapped(encoded_fusion_dist(code, standard_orientation(strategy), model));
  Engine engine(code, strategy, model);
  return engine.distribution();
}

struct EncodedFusionSampler::Impl {
  Impl(const ShorCode& code, const FusionStrategy& strategy, const PhysicalFusionModel& model)
      : swap(strategy.swap_roles), engine(code, standard_orientation(strategy), model) {
    const auto& pr = engine.probs();
    pe = static_cast<double>(pr.pe);
    ps = static_cast<double>(pr.ps);
    pl = static_cast<double>(pr.pl);
    // Precompute the adaptive policy for every reachable summary.
    if (strategy.kind == FusionStrategy::Kind::LocalAdaptive) {
      policy.resize(engine.pairs());
      std::vector<std::uint32_t> cur{Summary{}.key()};
      for (std::size_t t = 0; t < engine.pairs(); ++t) {
        std::vector<std::uint32_t> next;
        for (auto k : cur) {
          const Summary s = Summary::from_key(k);
          const Action a = engine.action(t, s);
          policy[t][k] = a;
          for (const auto& [q, e] : engine.events_of(a))
            if (q != 0) next.push_back(s.after(e, engine.block_end(t)).key());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
      }
    }
    kind = strategy.kind;
    assignment = standard_orientation(strategy).assignment;
  }

  EncodedOutcome draw(Rng& rng) const {
    Summary s;
    for (std::size_t t = 0; t < engine.pairs(); ++t) {
      const double u0 = uniform01(rng), u1 = uniform01(rng), u2 = uniform01(rng);
      Action a = Action::FuseRandom;
      if (kind == FusionStrategy::Kind::StaticBias)
        a = assignment[t] == FusionBasis::XX ? Action::FuseFailXX : Action::FuseFailZZ;
      else if (kind == FusionStrategy::Kind::LocalAdaptive)
        a = policy[t].at(s.key());
      Event e{};
      if (a == Action::SingleX || a == Action::SingleZ) {
        const bool keep_l = !(u0 < pl), keep_r = !(u1 < pl);
        const std::uint8_t span = keep_l ? (keep_r ? kFull : kLeft) : (keep_r ? kRight : kZero);
        e = a == Action::SingleX ? Event{0, span, kZero} : Event{0, kZero, span};
      } else if (u0 < pe) {
        e = {0, kZero, kZero};
      } else if (u1 < ps) {
        e = {0, kDiag, kDiag};
      } else {
        const bool fail_xx = a == Action::FuseFailXX || (a == Action::FuseRandom && u2 < 0.5);
        e = fail_xx ? Event{0, kDiag, kZero} : Event{0, kZero, kDiag};
      }
      s = s.after(e, engine.block_end(t));
    }
    const auto o = classify(s.x_recovered(), s.zok);
    return swap ? swap_outcome(o) : o;
  }

  bool swap;
  // Mutable for the lazily filled policy memo inside the engine.
  mutable Engine engine;
  FusionStrategy::Kind kind;
  std::vector<FusionBasis> assignment;
  double pe = 0, ps = 0, pl = 0;
  std::vector<std::unordered_map<std::uint32_t, Action>> policy;
};

EncodedFusionSampler::EncodedFusionSampler(const ShorCode& code, const FusionStrategy& strategy,
                                           const PhysicalFusionModel& model)
    : impl_(std::make_unique<Impl>(code, strategy, model)) {}
EncodedFusionSampler::~EncodedFusionSampler() = default;
EncodedFusionSampler::EncodedFusionSampler(EncodedFusionSampler&&) noexcept = default;
EncodedFusionSampler& EncodedFusionSampler::operator=(EncodedFusionSampler&&) noexcept = default;

EncodedOutcome EncodedFusionSampler::operator()(Rng& rng) const { return impl_->draw(rng); }

EncodedOutcome sample_encoded_fusion(const ShorCode& code, const FusionStrategy& strategy,
                                     const PhysicalFusionModel& model, Rng& rng) {
  return EncodedFusionSampler(code, strategy, model)(rng);
}

}  // namespace fbqc
