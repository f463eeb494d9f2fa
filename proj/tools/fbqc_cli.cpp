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


// Command-line front end: cost, fusion-stats, threshold, table1, figure,
// reference.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fbqc/cost.hpp"
#include "fbqc/encoded_fusion.hpp"
#include "fbqc/optimizer.hpp"
#include "fbqc/reports.hpp"
#include "fbqc/resource_states.hpp"
#include "fbqc/threshold_mc.hpp"

namespace {

using Record = nlohmann::ordered_json;
using namespace fbqc;

constexpr int kSchema = 1;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
};

// Collects records, prints them, and mirrors them to <out>/<name>.jsonl.
class Sink {
 public:
  Sink(const Globals& g, std::string name) : g_(g), name_(std::move(name)) {}

  void emit(Record r) {
    Record full;
    full["schema"] = kSchema;
    full["kind"] = name_;
    for (auto& [k, v] : r.items()) full[k] = v;
    const auto line = full.dump();
    lines_.push_back(line);
    if (g_.format == "records") {
      std::cout << line << '\n';
    } else {
      std::cout << text(full) << '\n';
    }
  }

  void finish() const {
    if (g_.out.empty()) return;
    std::filesystem::create_directories(g_.out);
    std::ofstream f(std::filesystem::path(g_.out) / (name_ + ".jsonl"), std::ios::binary);
    for (const auto& l : lines_) f << l << '\n';
    if (!f) throw std::runtime_error("cannot write records under " + g_.out);
  }

 private:
  static std::string text(const Record& r) {
    std::string s;
    for (const auto& [k, v] : r.items()) {
      if (k == "schema" || k == "kind" || v.is_array() || v.is_object()) continue;
      if (!s.empty()) s += "  ";
      s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    return s;
  }

  const Globals& g_;
  std::string name_;
  std::vector<std::string> lines_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::string, std::string>> parse_filters(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : raw) {
    const auto eq = f.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("filter must be key=value: " + f);
    out.emplace_back(f.substr(0, eq), f.substr(eq + 1));
  }
  return out;
}

FusionStrategy resolve_strategy(const std::string& text, const ShorCode& code, const PhysicalFusionModel& model,
                                bool swap) {
  auto s = FusionStrategy::parse(text);
  if (s.kind == FusionStrategy::Kind::StaticBias && s.assignment.empty()) s.assignment = best_static_bias(code, model);
  s.swap_roles = swap;
  s.validate(code);
  return s;
}

std::string rational_text(const Rational& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad size list: " + text);
    }
  }
  if (out.size() < 2) throw ValidationError("need at least two sizes");
  return out;
}

std::pair<double, double> parse_bracket(const std::string& text) {
  double lo = 0, hi = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &lo, &hi, &extra) != 2 || !(lo < hi))
    throw ValidationError("bracket must be lo,hi with lo < hi: " + text);
  return {lo, hi};
}

// --- subcommands -----------------------------------------------------------

struct CostArgs {
  std::string family, code, edges;
  std::uint64_t budget = 1'000'000;
  unsigned threads = 0;
};

int run_cost(const Globals& g, const CostArgs& a) {
  auto family = ResourceFamily::parse(a.family);
  if (!a.edges.empty()) family.edges_override = GraphState::from_text(read_file(a.edges));
  const auto code = ShorCode::parse(a.code);
  const auto target = apply_shor_encoding(build_base_state(family), code);
  OptimizerOptions opt;
  opt.budget = a.budget;
  opt.seed = g.seed;
  opt.threads = a.threads;
  const auto res = optimize_schedule(target, opt);
  const auto bound = lower_bound(target.num_qubits());
  Sink sink(g, "cost");
  Record r;
  r["family"] = family.name();
  r["code"] = code.str();
  r["qubits"] = target.num_qubits();
  r["lower_bound"] = bound.str();
  r["cost"] = res.cost.str();
  r["gap_percent"] = 100.0 * (static_cast<double>(res.cost) / static_cast<double>(bound) - 1.0);
  r["target_matched"] = res.target_matched;
  r["fusions"] = res.tree.num_fusions();
  r["budget"] = a.budget;
  r["seed"] = g.seed;
  sink.emit(r);
  sink.finish();
  return 0;
}

struct FusionArgs {
  std::string code, strategy = "randomized";
  double eta = 0.0;
  unsigned ppq = 1;
  bool boosted = false, swap = false, exact = false;
  std::uint64_t samples = 0;
};

int run_fusion_stats(const Globals& g, const FusionArgs& a) {
  const auto code = ShorCode::parse(a.code);
  PhysicalFusionModel model{a.eta, a.ppq, a.boosted};
  model.validate();
  const auto strategy = resolve_strategy(a.strategy, code, model, a.swap);
  Sink sink(g, "fusion-stats");
  Record r;
  r["code"] = code.str();
  r["strategy"] = strategy.name();
  r["eta"] = a.eta;
  r["photons_per_qubit"] = a.ppq;
  r["boosted"] = a.boosted;
  const EncodedOutcome order[] = {EncodedOutcome::Both, EncodedOutcome::XXOnly, EncodedOutcome::ZZOnly,
                                  EncodedOutcome::Neither};
  if (a.samples == 0) {
    const auto dist = (a.exact && code.size() <= kEnumerationLimit) ? exact_encoded_fusion_dist(code, strategy, model)
                                                                     : encoded_fusion_dist(code, strategy, model);
    r["method"] = (a.exact && code.size() <= kEnumerationLimit) ? "enumeration" : "block";
    for (auto o : order) {
      r[outcome_name(o)] = static_cast<double>(dist[o]);
      r[std::string(outcome_name(o)) + "_exact"] = rational_text(dist[o]);
    }
  } else {
    EncodedFusionSampler sampler(code, strategy, model);
    Rng rng(derive_seed(g.seed, {0xf5}));
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t i = 0; i < a.samples; ++i) ++counts[static_cast<int>(sampler(rng))];
    r["method"] = "sampled";
    r["samples"] = a.samples;
    r["seed"] = g.seed;
    for (auto o : order) {
      r[outcome_name(o)] = static_cast<double>(counts[static_cast<int>(o)]) / static_cast<double>(a.samples);
      r[std::string(outcome_name(o)) + "_count"] = counts[static_cast<int>(o)];
    }
  }
  sink.emit(r);
  sink.finish();
  return 0;
}

struct ThresholdArgs {
  std::string family = "6ring", code = "2,2", strategy = "randomized";
  bool boosted = false, swap = false, control = false;
  unsigned ppq = 1;
  std::string sizes = "8,12", bracket = "0,0.1", log;
  std::uint64_t trials = 2000;
  unsigned threads = 0, grid = 9, bootstrap = 200;
};

int run_threshold(const Globals& g, const ThresholdArgs& a) {
  const auto family = ResourceFamily::parse(a.family);
  ThresholdOptions opt;
  opt.sizes = parse_sizes(a.sizes);
  std::tie(opt.lo, opt.hi) = parse_bracket(a.bracket);
  opt.trials = a.trials;
  opt.seed = g.seed;
  opt.threads = a.threads;
  opt.grid = a.grid;
  opt.bootstrap = a.bootstrap;

  Record r;
  r["family"] = family.name();
  ThresholdEstimate est;
  if (a.control) {
    r["model"] = "bond-erasure";
    est = estimate_percolation_threshold(family, opt);
  } else {
    const auto code = ShorCode::parse(a.code);
    PhysicalFusionModel model{0.5 * (opt.lo + opt.hi), a.ppq, a.boosted};
    model.validate();
    // A static assignment is chosen once, at the bracket midpoint.
    const auto strategy = resolve_strategy(a.strategy, code, model, a.swap);
    r["model"] = "encoded-fusion";
    r["code"] = code.str();
    r["strategy"] = strategy.name();
    r["boosted"] = a.boosted;
    r["photons_per_qubit"] = a.ppq;
    r["photons"] = photon_count(family, code, a.ppq);
    est = estimate_threshold(family, code, strategy, model, opt);
  }
  r["crossed"] = est.crossed;
  r["threshold"] = est.threshold;
  r["ci_lo"] = est.ci_lo;
  r["ci_hi"] = est.ci_hi;
  r["message"] = est.message;
  r["sizes"] = opt.sizes;
  r["trials"] = opt.trials;
  r["bracket"] = {opt.lo, opt.hi};
  r["grid"] = opt.grid;
  r["bootstrap"] = opt.bootstrap;
  r["seed"] = g.seed;

  std::string log = a.log;
  if (log.empty() && !g.out.empty()) log = (std::filesystem::path(g.out) / "threshold_log.jsonl").string();
  if (!log.empty()) {
    if (auto dir = std::filesystem::path(log).parent_path(); !dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream f(log, std::ios::app | std::ios::binary);
    for (const auto& p : est.points) {
      Record row;
      row["schema"] = kSchema;
      row["kind"] = "threshold-point";
      row["family"] = r["family"];
      if (r.contains("code")) row["code"] = r["code"];
      if (r.contains("strategy")) row["strategy"] = r["strategy"];
      row["x"] = p.x;
      row["L"] = p.L;
      row["failures"] = p.failures;
      row["trials"] = p.trials;
      row["seed"] = g.seed;
      f << row.dump() << '\n';
    }
    if (!f) throw std::runtime_error("cannot append to " + log);
  }

  Sink sink(g, "threshold");
  sink.emit(r);
  sink.finish();
  return 0;
}

struct Table1Args {
  std::uint64_t budget = 1'000'000;
  unsigned threads = 0;
};

int run_table1(const Globals& g, const Table1Args& a) {
  const auto rows = report_table1(a.budget, g.seed, a.threads);
  Sink sink(g, "table1");
  bool any_flag = false;
  for (const auto& row : rows) {
    Record r;
    r["family"] = row.family;
    r["code"] = row.code.str();
    r["qubits"] = row.qubits;
    r["published_cost"] = row.published_cost;
    r["computed_cost"] = row.computed_cost.str();
    r["lower_bound"] = row.lower_bound.str();
    r["published_gap_percent"] = 100.0 * row.published_gap();
    r["computed_gap_percent"] = 100.0 * row.computed_gap();
    r["target_matched"] = row.target_matched;
    r["flagged"] = row.flagged;
    r["budget"] = a.budget;
    r["seed"] = g.seed;
    sink.emit(r);
    any_flag = any_flag || row.flagged || !row.target_matched;
  }
  sink.finish();
  return any_flag ? 3 : 0;
}

struct FigureArgs {
  std::vector<std::string> filters;
  std::vector<std::string> computed;
  std::string svg;
  bool envelope = false;
};

std::vector<FigurePoint> load_computed(const std::string& path) {
  std::vector<FigurePoint> pts;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ValidationError("bad record in " + path);
    if (j.value("kind", "") != "threshold" || !j.value("crossed", false) || !j.contains("photons")) continue;
    FigurePoint p;
    p.series = "computed | " + j.value("strategy", "") + " | " + j.value("family", "");
    p.method = "computed";
    p.photons = j["photons"].get<double>();
    p.lppt = j["threshold"].get<double>();
    p.computed = true;
    pts.push_back(p);
  }
  return pts;
}

int run_figure(const Globals& g, const FigureArgs& a) {
  auto pts = figure_points(filter_rows(load_reference_table(), parse_filters(a.filters)));
  for (const auto& path : a.computed) {
    const auto extra = load_computed(path);
    pts.insert(pts.end(), extra.begin(), extra.end());
  }
  if (a.envelope) pts = envelope(pts);
  const auto svg = render_svg(pts);

  std::string svg_path = a.svg;
  if (svg_path.empty() && !g.out.empty()) svg_path = (std::filesystem::path(g.out) / "figure.svg").string();
  if (!svg_path.empty()) {
    if (auto dir = std::filesystem::path(svg_path).parent_path(); !dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream f(svg_path, std::ios::binary);
    f << svg;
    if (!f) throw std::runtime_error("cannot write " + svg_path);
  }
  if (g.format == "text" && svg_path.empty()) {
    std::cout << svg;
    return 0;
  }
  Sink sink(g, "figure");
  for (const auto& p : pts) {
    Record r;
    r["series"] = p.series;
    r["method"] = p.method;
    r["photons"] = p.photons;
    r["lppt"] = p.lppt;
    r["computed"] = p.computed;
    r["envelope"] = a.envelope;
    sink.emit(r);
  }
  sink.finish();
  return 0;
}

struct ReferenceArgs {
  std::vector<std::string> filters;
  bool audit = false;
};

int run_reference(const Globals& g, const ReferenceArgs& a) {
  const auto rows = filter_rows(load_reference_table(), parse_filters(a.filters));
  Sink sink(g, "reference");
  if (a.audit) {
    const auto problems = audit_reference_rows(rows);
    for (const auto& p : problems) std::cerr << p << '\n';
    Record r;
    r["rows"] = rows.size();
    r["problems"] = problems.size();
    sink.emit(r);
    sink.finish();
    return problems.empty() ? 0 : 3;
  }
  for (const auto& row : rows) {
    Record r;
    r["method"] = row.adaptivity_method;
    r["ref"] = row.source_ref;
    r["network"] = row.fusion_network;
    r["state"] = row.unencoded_state;
    r["encoding"] = row.local_encoding;
    r["qubits"] = row.qubit_count;
    r["lppt"] = row.lppt;
    r["boosted"] = row.boosted;
    sink.emit(r);
  }
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fbqc: resource-state costing and loss thresholds for encoded fusion networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed")->capture_default_str();
  app.add_option("--out", g.out, "Directory for record files");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "records"}))->capture_default_str();

  CostArgs cost;
  auto* c = app.add_subcommand("cost", "Optimise a 3GHZ merge schedule for an encoded resource state");
  c->add_option("--family", cost.family, "4star, 6ring, 8ld or bell")->required();
  c->add_option("--code", cost.code, "Shor code n,m")->required();
  c->add_option("--edges", cost.edges, "Edge list replacing the 8-LD base graph");
  c->add_option("--budget", cost.budget, "Annealing steps over all restarts")->capture_default_str();
  c->add_option("--threads", cost.threads, "Worker threads (0: all cores)");

  FusionArgs fus;
  auto* f = app.add_subcommand("fusion-stats", "Outcome distribution of one encoded fusion");
  f->add_option("--code", fus.code, "Shor code n,m")->required();
  f->add_option("--strategy", fus.strategy, "randomized, static or adaptive")->capture_default_str();
  f->add_option("--eta", fus.eta, "Loss per photon")->capture_default_str();
  f->add_option("--ppq", fus.ppq, "Photons per qubit")->capture_default_str();
  f->add_flag("--boosted", fus.boosted, "Boosted physical fusions");
  f->add_flag("--swap-roles", fus.swap, "Exchange the XX and ZZ roles of the code");
  auto* ex = f->add_flag("--exact", fus.exact, "Enumerate outcome patterns (small codes)");
  f->add_option("--samples", fus.samples, "Monte Carlo draws instead of the exact distribution")->excludes(ex);

  ThresholdArgs thr;
  auto* t = app.add_subcommand("threshold", "Loss-per-photon threshold by finite-size crossing");
  t->add_option("--family", thr.family, "Fusion network family")->capture_default_str();
  t->add_option("--code", thr.code, "Shor code n,m")->capture_default_str();
  t->add_option("--strategy", thr.strategy, "randomized, static or adaptive")->capture_default_str();
  t->add_flag("--boosted", thr.boosted, "Boosted physical fusions");
  t->add_option("--ppq", thr.ppq, "Photons per qubit")->capture_default_str();
  t->add_flag("--swap-roles", thr.swap, "Exchange the XX and ZZ roles of the code");
  t->add_flag("--control", thr.control, "Plain bond erasure on the primal lattice");
  t->add_option("--sizes", thr.sizes, "Lattice sizes")->capture_default_str();
  t->add_option("--trials", thr.trials, "Trials per point")->capture_default_str();
  t->add_option("--bracket", thr.bracket, "Search interval lo,hi")->capture_default_str();
  t->add_option("--grid", thr.grid, "Points per grid")->capture_default_str();
  t->add_option("--bootstrap", thr.bootstrap, "Bootstrap resamples")->capture_default_str();
  t->add_option("--threads", thr.threads, "Worker threads (0: all cores)");
  t->add_option("--log", thr.log, "Append raw curve points to this file");

  Table1Args t1;
  auto* tb = app.add_subcommand("table1", "Reproduce the resource-state costing table");
  tb->add_option("--budget", t1.budget, "Annealing steps per row")->capture_default_str();
  tb->add_option("--threads", t1.threads, "Worker threads (0: all cores)");

  FigureArgs fig;
  auto* fg = app.add_subcommand("figure", "Threshold versus photon count");
  fg->add_option("--filter", fig.filters, "key=value, repeatable");
  fg->add_option("--computed", fig.computed, "threshold records to overlay");
  fg->add_option("--svg", fig.svg, "SVG output path");
  fg->add_flag("--envelope", fig.envelope, "Keep only the best points of each series");

  ReferenceArgs ref;
  auto* rf = app.add_subcommand("reference", "Published loss thresholds");
  rf->add_option("--filter", ref.filters, "key=value, repeatable");
  rf->add_flag("--audit", ref.audit, "Recompute qubit counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c) return run_cost(g, cost);
    if (*f) return run_fusion_stats(g, fus);
    if (*t) return run_threshold(g, thr);
    if (*tb) return run_table1(g, t1);
    if (*fg) return run_figure(g, fig);
    if (*rf) return run_reference(g, ref);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
