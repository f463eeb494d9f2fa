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

#include "fbqc/threshold_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace fbqc {

namespace {

constexpr int kMaxOffset = 1;

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

std::vector<double> linspace(double lo, double hi, unsigned n) {
  std::vector<double> xs(n);
  for (unsigned i = 0; i < n; ++i) xs[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return xs;
}

}  // namespace

// ---------------------------------------------------------------------------
// Network definitions

CellDefinition CellDefinition::from_json_text(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("network definition: ") + e.what());
  }
  if (j.value("schema", 0) != 1) throw ValidationError("network definition: unsupported schema");
  CellDefinition c;
  try {
    c.family = j.at("family").get<std::string>();
    c.primal_nodes = j.at("primal_nodes").get<std::uint32_t>();
    c.dual_nodes = j.at("dual_nodes").get<std::uint32_t>();
    auto half = [](const json& h) {
      return Half{h.at(0).get<std::uint32_t>(), h.at(1).get<std::uint32_t>(), h.at(2).get<std::array<int, 3>>()};
    };
    for (const auto& s : j.at("sites")) c.sites.push_back({half(s.at("primal")), half(s.at("dual"))});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("network definition: ") + e.what());
  }
  c.validate();
  return c;
}

CellDefinition CellDefinition::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network definition " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void CellDefinition::validate() const {
  if (primal_nodes == 0 || dual_nodes == 0) throw ValidationError("cell needs nodes");
  if (sites.empty()) throw ValidationError("cell needs sites");
  auto check = [](const Half& h, std::uint32_t nodes) {
    if (h.u >= nodes || h.v >= nodes) throw ValidationError("cell edge endpoint out of range");
    for (int d : h.offset)
      if (std::abs(d) > kMaxOffset) throw ValidationError("cell offsets must lie in [-1, 1]");
    if (h.u == h.v && h.offset == std::array<int, 3>{0, 0, 0}) throw ValidationError("cell self-loop");
  };
  for (const auto& s : sites) {
    check(s.primal, primal_nodes);
    check(s.dual, dual_nodes);
  }
}

CellDefinition six_ring_cell() {
  CellDefinition c;
  c.family = "6ring";
  for (int d = 0; d < 3; ++d) {
    std::array<int, 3> off{};
    off[d] = 1;
    c.sites.push_back({{0, 0, off}, {0, 0, off}});
  }
  return c;
}

std::string network_data_dir() {
  if (const char* env = std::getenv("FBQC_DATA_DIR"); env && *env) return std::string(env) + "/networks";
#ifdef FBQC_DATA_DIR
  return std::string(FBQC_DATA_DIR) + "/networks";
#else
  return "data/networks";
#endif
}

CellDefinition load_cell(const ResourceFamily& family) {
  switch (family.kind) {
    case Family::SixRing:
      return six_ring_cell();
    case Family::FourStar:
      return CellDefinition::from_json_file(network_data_dir() + "/four_star.json");
    case Family::EightLD:
      return CellDefinition::from_json_file(network_data_dir() + "/eight_ld.json");
    case Family::BellPair:
      break;
  }
  throw ValidationError("no fusion network for family " + family.name());
}

FusionNetwork build_network(const CellDefinition& cell, std::size_t L) {
  cell.validate();
  if (L < 3) throw ValidationError("network size L must be at least 3");
  FusionNetwork net;
  net.family = cell.family;
  net.L = L;
  const std::size_t cells = L * L * L;
  net.primal_nodes = cells * cell.primal_nodes;
  net.dual_nodes = cells * cell.dual_nodes;
  const int l = static_cast<int>(L);
  auto make = [&](int x, int y, int z, const CellDefinition::Half& h, std::uint32_t per) {
    const int c[3] = {x, y, z};
    NetworkEdge e;
    int t[3];
    for (int d = 0; d < 3; ++d) {
      const int raw = c[d] + h.offset[d];
      e.wrap[d] = static_cast<std::int8_t>(floor_div(raw, l));
      t[d] = raw - e.wrap[d] * l;
    }
    auto index = [&](const int* p) { return static_cast<std::uint32_t>((p[0] * l + p[1]) * l + p[2]); };
    e.u = index(c) * per + h.u;
    e.v = index(t) * per + h.v;
    return e;
  };
  net.primal.reserve(cells * cell.sites.size());
  net.dual.reserve(cells * cell.sites.size());
  for (int x = 0; x < l; ++x)
    for (int y = 0; y < l; ++y)
      for (int z = 0; z < l; ++z)
        for (const auto& s : cell.sites) {
          net.primal.push_back(make(x, y, z, s.primal, cell.primal_nodes));
          net.dual.push_back(make(x, y, z, s.dual, cell.dual_nodes));
        }
  return net;
}

FusionNetwork build_network(const ResourceFamily& family, std::size_t L) {
  return build_network(load_cell(family), L);
}

// ---------------------------------------------------------------------------
// Wrap detection

WrapDetector::WrapDetector(std::size_t nodes) : parent_(nodes), size_(nodes), off_(nodes) { reset(); }

void WrapDetector::reset() {
  for (std::uint32_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
  std::fill(size_.begin(), size_.end(), 1u);
  std::fill(off_.begin(), off_.end(), std::array<int, 3>{});
  wrapped_ = false;
}

std::uint32_t WrapDetector::find(std::uint32_t x, std::array<int, 3>& off) {
  // Walk up accumulating offsets, then compress.
  std::uint32_t r = x;
  off = {0, 0, 0};
  while (parent_[r] != r) {
    for (int d = 0; d < 3; ++d) off[d] += off_[r][d];
    r = parent_[r];
  }
  std::array<int, 3> rem = off;
  while (parent_[x] != r && parent_[x] != x) {
    const std::uint32_t next = parent_[x];
    const auto step = off_[x];
    parent_[x] = r;
    off_[x] = rem;
    for (int d = 0; d < 3; ++d) rem[d] -= step[d];
    x = next;
  }
  return r;
}

bool WrapDetector::add(const NetworkEdge& e) {
  std::array<int, 3> ou, ov;
  std::uint32_t ru = find(e.u, ou), rv = find(e.v, ov);
  std::array<int, 3> delta;  // pos(rv) - pos(ru)
  for (int d = 0; d < 3; ++d) delta[d] = ou[d] + e.wrap[d] - ov[d];
  if (ru == rv) {
    if (delta != std::array<int, 3>{0, 0, 0}) wrapped_ = true;
    return wrapped_;
  }
  if (size_[ru] < size_[rv]) {
    std::swap(ru, rv);
    for (auto& d : delta) d = -d;
  }
  parent_[rv] = ru;
  off_[rv] = delta;
  size_[ru] += size_[rv];
  return wrapped_;
}

bool spans(std::size_t nodes, const std::vector<NetworkEdge>& edges, const std::vector<char>& erased) {
  WrapDetector w(nodes);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (erased[i] && w.add(edges[i])) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Sampling

ErasureSample sample_erasures(const FusionNetwork& net, const EncodedFusionSampler& sampler, Rng& rng) {
  ErasureSample s;
  const std::size_t n = net.num_sites();
  s.outcomes.resize(n);
  s.primal_erased.resize(n);
  s.dual_erased.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = sampler(rng);
    s.outcomes[i] = o;
    s.primal_erased[i] = !(o == EncodedOutcome::Both || o == EncodedOutcome::XXOnly);
    s.dual_erased[i] = !(o == EncodedOutcome::Both || o == EncodedOutcome::ZZOnly);
  }
  return s;
}

bool failed(const FusionNetwork& net, const ErasureSample& s) {
  return spans(net.primal_nodes, net.primal, s.primal_erased) || spans(net.dual_nodes, net.dual, s.dual_erased);
}

bool sample_failure(const FusionNetwork& net, const ShorCode& code, const FusionStrategy& strategy,
                    const PhysicalFusionModel& model, Rng& rng) {
  const EncodedFusionSampler sampler(code, strategy, model);
  return failed(net, sample_erasures(net, sampler, rng));
}

// ---------------------------------------------------------------------------
// Fitting

double LogisticFit::operator()(double x) const { return 1.0 / (1.0 + std::exp(-(a + b * x))); }

LogisticFit fit_logistic(const std::vector<double>& x, const std::vector<std::uint64_t>& k,
                         const std::vector<std::uint64_t>& n) {
  LogisticFit fit;
  const std::size_t m = x.size();
  double sw = 0, mu = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sw += static_cast<double>(n[i]);
    mu += static_cast<double>(n[i]) * x[i];
  }
  if (m < 2 || sw == 0) return fit;
  mu /= sw;
  double var = 0;
  for (std::size_t i = 0; i < m; ++i) var += static_cast<double>(n[i]) * (x[i] - mu) * (x[i] - mu);
  const double sd = std::sqrt(var / sw);
  if (sd == 0) return fit;

  // Newton on standardized t; a small ridge keeps separable data finite.
  const double ridge = 1e-6;
  double a = 0, b = 0;
  auto loglik = [&](double aa, double bb) {
    double ll = -0.5 * ridge * (aa * aa + bb * bb);
    for (std::size_t i = 0; i < m; ++i) {
      const double eta = aa + bb * (x[i] - mu) / sd;
      // log p = -log(1+e^-eta), log(1-p) = -log(1+e^eta)
      const double lp = -std::log1p(std::exp(-eta)), lq = -std::log1p(std::exp(eta));
      ll += static_cast<double>(k[i]) * lp + static_cast<double>(n[i] - k[i]) * lq;
    }
    return ll;
  };
  double ll = loglik(a, b);
  for (int it = 0; it < 200; ++it) {
    double g0 = -ridge * a, g1 = -ridge * b, h00 = ridge, h01 = 0, h11 = ridge;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = (x[i] - mu) / sd;
      const double p = 1.0 / (1.0 + std::exp(-(a + b * t)));
      const double r = static_cast<double>(k[i]) - static_cast<double>(n[i]) * p;
      const double w = static_cast<double>(n[i]) * p * (1 - p);
      g0 += r;
      g1 += r * t;
      h00 += w;
      h01 += w * t;
      h11 += w * t * t;
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0)) break;
    double da = (h11 * g0 - h01 * g1) / det, db = (h00 * g1 - h01 * g0) / det;
    double step = 1.0, nll = ll;
    for (int h = 0; h < 40; ++h) {
      nll = loglik(a + step * da, b + step * db);
      if (nll >= ll) break;
      step *= 0.5;
    }
    a += step * da;
    b += step * db;
    const bool done = std::abs(nll - ll) < 1e-12 * (1 + std::abs(ll));
    ll = nll;
    if (done) break;
  }
  fit.b = b / sd;
  fit.a = a - b * mu / sd;
  fit.ok = std::isfinite(fit.a) && std::isfinite(fit.b);
  return fit;
}

namespace {

// Per-size results: for each x, one bit per trial.
struct SizeData {
  std::size_t L;
  std::map<double, std::vector<char>> bits;
};

void run_points(const KernelFactory& factory, const ThresholdOptions& opt, SizeData& data,
                const std::vector<double>& xs_all) {
  std::vector<double> xs;
  for (double x : xs_all)
    if (!data.bits.count(x)) xs.push_back(x);
  if (xs.empty()) return;
  const std::size_t T = opt.trials;
  std::vector<std::vector<char>> out(xs.size(), std::vector<char>(T));
  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, T));
  auto work = [&](unsigned w) {
    TrialKernel kernel = factory(data.L);
    std::vector<char> fail(xs.size());
    for (std::size_t t = w; t < T; t += workers) {
      Rng rng(derive_seed(opt.seed, {static_cast<std::uint64_t>(data.L), t}));
      kernel(rng, xs, fail);
      for (std::size_t k = 0; k < xs.size(); ++k) out[k][t] = fail[k];
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (std::size_t k = 0; k < xs.size(); ++k) data.bits[xs[k]] = std::move(out[k]);
}

struct Curve {
  std::vector<double> x;
  std::vector<std::uint64_t> k, n;
};

Curve curve(const SizeData& d, double lo, double hi, const std::vector<std::uint32_t>* weights) {
  Curve c;
  for (const auto& [x, bits] : d.bits) {
    if (x < lo || x > hi) continue;
    std::uint64_t f = 0, n = 0;
    for (std::size_t t = 0; t < bits.size(); ++t) {
      const std::uint64_t w = weights ? (*weights)[t] : 1;
      f += w * static_cast<std::uint64_t>(bits[t]);
      n += w;
    }
    c.x.push_back(x);
    c.k.push_back(f);
    c.n.push_back(n);
  }
  return c;
}

// Crossing of the logistic fits; NaN when there is none.
double crossing(const Curve& small, const Curve& big) {
  const auto fs = fit_logistic(small.x, small.k, small.n), fb = fit_logistic(big.x, big.k, big.n);
  if (!fs.ok || !fb.ok || fs.b == fb.b) return std::nan("");
  return (fs.a - fb.a) / (fb.b - fs.b);
}

}  // namespace

ThresholdEstimate estimate_crossing(const KernelFactory& factory, const ThresholdOptions& opt) {
  if (opt.sizes.size() < 2) throw ValidationError("threshold estimation needs at least two sizes");
  if (!(opt.lo < opt.hi)) throw ValidationError("bracket must satisfy lo < hi");
  if (opt.lo < 0 || opt.hi > 1) throw ValidationError("bracket must lie in [0, 1]");
  if (opt.trials == 0) throw ValidationError("trials must be positive");
  if (opt.grid < 3) throw ValidationError("grid needs at least three points");

  ThresholdEstimate est;
  est.sizes = opt.sizes;
  std::sort(est.sizes.begin(), est.sizes.end());
  est.trials = opt.trials;
  std::vector<SizeData> data;
  for (auto L : est.sizes) data.push_back({L, {}});

  const auto coarse = linspace(opt.lo, opt.hi, opt.grid);
  for (auto& d : data) run_points(factory, opt, d, coarse);
  SizeData& s = data[data.size() - 2];
  SizeData& b = data.back();
  // The data must show the larger size overtaking the smaller one. Points
  // where both sizes never fail count as below, always fail as above.
  const Curve cs = curve(s, opt.lo, opt.hi, nullptr), cb = curve(b, opt.lo, opt.hi, nullptr);
  double below = std::nan(""), above = std::nan("");
  for (std::size_t i = 0; i < cs.x.size() && std::isnan(above); ++i) {
    const double d = double(cb.k[i]) / double(cb.n[i]) - double(cs.k[i]) / double(cs.n[i]);
    const bool none = cb.k[i] == 0 && cs.k[i] == 0;
    const bool all = cb.k[i] == cb.n[i] && cs.k[i] == cs.n[i];
    if (d < 0 || none) below = cs.x[i];
    if ((d > 0 || all) && !std::isnan(below)) above = cs.x[i];
  }
  double x0 = std::nan("");
  if (!std::isnan(above)) {
    x0 = crossing(cs, cb);
    if (!(x0 >= below && x0 <= above)) x0 = 0.5 * (below + above);
  }

  auto collect = [&]() {
    for (const auto& d : data)
      for (const auto& [x, bits] : d.bits)
        est.points.push_back({d.L, x, static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), 1)),
                              static_cast<std::uint64_t>(bits.size())});
  };
  if (!(x0 >= opt.lo && x0 <= opt.hi)) {
    est.message = "no crossing in bracket";
    collect();
    return est;
  }

  const double half = 1.5 * (opt.hi - opt.lo) / (opt.grid - 1);
  const double wlo = std::max(opt.lo, x0 - half), whi = std::min(opt.hi, x0 + half);
  const auto fine = linspace(wlo, whi, opt.grid);
  for (auto& d : data) run_points(factory, opt, d, fine);

  const double x1 = crossing(curve(s, wlo, whi, nullptr), curve(b, wlo, whi, nullptr));
  collect();
  if (!(x1 >= opt.lo && x1 <= opt.hi)) {
    est.message = "no crossing in bracket";
    return est;
  }
  est.crossed = true;
  est.threshold = x1;

  // Bootstrap over trials; each size keeps its trial coupling across x.
  Rng rng(derive_seed(opt.seed, {0xB007}));
  std::vector<double> xs;
  std::vector<std::uint32_t> ws(opt.trials), wb(opt.trials);
  for (unsigned r = 0; r < opt.bootstrap; ++r) {
    std::fill(ws.begin(), ws.end(), 0u);
    std::fill(wb.begin(), wb.end(), 0u);
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      ++ws[rng() % opt.trials];
      ++wb[rng() % opt.trials];
    }
    const double xb = crossing(curve(s, wlo, whi, &ws), curve(b, wlo, whi, &wb));
    if (std::isfinite(xb)) xs.push_back(xb);
  }
  if (xs.empty()) {
    est.ci_lo = est.ci_hi = x1;
  } else {
    std::sort(xs.begin(), xs.end());
    auto q = [&](double p) { return xs[static_cast<std::size_t>(std::floor(p * (xs.size() - 1) + 0.5))]; };
    est.ci_lo = std::min(q(0.025), x1);
    est.ci_hi = std::max(q(0.975), x1);
  }
  est.message = "ok";
  return est;
}

ThresholdEstimate estimate_threshold(const ResourceFamily& family, const ShorCode& code,
                                     const FusionStrategy& strategy, const PhysicalFusionModel& model,
                                     const ThresholdOptions& options) {
  code.validate();
  model.validate();
  strategy.validate(code);
  const auto cell = load_cell(family);
  std::map<std::size_t, std::shared_ptr<const FusionNetwork>> nets;
  for (auto L : options.sizes) nets[L] = std::make_shared<const FusionNetwork>(build_network(cell, L));

  struct SiteProbs {
    double x_lost, z_lost_given_x_lost, z_lost_given_x_kept;
  };
  // Exact per-site probabilities, shared by all workers.
  auto probs_cache = std::make_shared<std::map<double, SiteProbs>>();
  auto probs_mutex = std::make_shared<std::mutex>();
  auto probs_for = [=](double eta) {
    std::lock_guard<std::mutex> lock(*probs_mutex);
    if (auto it = probs_cache->find(eta); it != probs_cache->end()) return it->second;
    PhysicalFusionModel m = model;
    m.eta = eta;
    const auto d = encoded_fusion_dist(code, strategy, m).to_double();
    const double both = d[0], xo = d[1], zo = d[2], ne = d[3];
    const double xl = zo + ne;
    SiteProbs p{xl, xl > 0 ? ne / xl : 0.0, xl < 1 ? xo / (both + xo) : 0.0};
    (*probs_cache)[eta] = p;
    return p;
  };

  KernelFactory factory = [=](std::size_t L) -> TrialKernel {
    auto net = nets.at(L);
    auto wp = std::make_shared<WrapDetector>(net->primal_nodes);
    auto wd = std::make_shared<WrapDetector>(net->dual_nodes);
    auto u = std::make_shared<std::vector<double>>(2 * net->num_sites());
    return [=](Rng& rng, const std::vector<double>& xs, std::vector<char>& fail) {
      for (auto& v : *u) v = uniform01(rng);
      const std::size_t n = net->num_sites();
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const SiteProbs p = probs_for(xs[k]);
        wp->reset();
        bool f = false;
        for (std::size_t i = 0; i < n && !f; ++i)
          if ((*u)[2 * i] < p.x_lost) f = wp->add(net->primal[i]);
        if (!f) {
          wd->reset();
          for (std::size_t i = 0; i < n && !f; ++i) {
            const bool xl = (*u)[2 * i] < p.x_lost;
            if ((*u)[2 * i + 1] < (xl ? p.z_lost_given_x_lost : p.z_lost_given_x_kept)) f = wd->add(net->dual[i]);
          }
        }
        fail[k] = f;
      }
    };
  };
  return estimate_crossing(factory, options);
}

ThresholdEstimate estimate_percolation_threshold(const ResourceFamily& family, const ThresholdOptions& options) {
  const auto cell = load_cell(family);
  std::map<std::size_t, std::shared_ptr<const FusionNetwork>> nets;
  for (auto L : options.sizes) nets[L] = std::make_shared<const FusionNetwork>(build_network(cell, L));
  KernelFactory factory = [=](std::size_t L) -> TrialKernel {
    auto net = nets.at(L);
    auto wp = std::make_shared<WrapDetector>(net->primal_nodes);
    auto u = std::make_shared<std::vector<double>>(net->num_sites());
    return [=](Rng& rng, const std::vector<double>& xs, std::vector<char>& fail) {
      for (auto& v : *u) v = uniform01(rng);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        wp->reset();
        bool f = false;
        for (std::size_t i = 0; i < u->size() && !f; ++i)
          if ((*u)[i] < xs[k]) f = wp->add(net->primal[i]);
        fail[k] = f;
      }
    };
  };
  return estimate_crossing(factory, options);
}

}  // namespace fbqc
