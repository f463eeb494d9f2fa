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


#include "fbqc/reports.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "fbqc/optimizer.hpp"

namespace fbqc {

namespace {

struct RawRow {
  const char* method;
  const char* ref;
  const char* network;
  const char* state;
  const char* encoding;
  std::uint64_t qubits;
  double lppt_percent;
  bool boosted;
};

// Loss-per-photon threshold data, one entry per published row. Rows without a
// citation carry "this paper".
const RawRow kTable[] = {
    {"Exposure based adaptivity", "DBA,FusionComplexes", "LoopyDiamond", "8-LD", "{2,1}", 16, 3.9, false},
    {"Exposure based adaptivity", "DBA,FusionComplexes", "LoopyDiamond", "8-LD", "{2,2}", 32, 9.0, false},
    {"Exposure based adaptivity", "DBA,FusionComplexes", "LoopyDiamond", "8-LD", "{4,3}", 96, 15.4, false},
    {"Exposure based adaptivity", "DBA,FusionComplexes", "LoopyDiamond", "8-LD", "{7,4}", 224, 18.8, false},
    {"Exposure based adaptivity", "DBA", "6ring", "6ring", "{2,1}", 12, 2.6, false},
    {"Exposure based adaptivity", "DBA", "6ring", "6ring", "{2,2}", 24, 7.5, false},
    {"Exposure based adaptivity", "DBA", "6ring", "6ring", "{4,3}", 72, 13.9, false},
    {"Exposure based adaptivity", "DBA", "6ring", "6ring", "{7,4}", 168, 17.4, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{2,2}", 16, 2.6, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{2,3}", 24, 5.0, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{2,4}", 32, 5.7, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{3,3}", 36, 7.5, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{4,3}", 48, 8.3, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{4,4}", 64, 9.7, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{5,4}", 80, 10.9, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{6,4}", 96, 11.7, false},
    {"Local adaptivity", "pankovich", "4star dual", "{2,1}-BP", "{7,4}", 112, 12.2, false},
    {"Local adaptivity", "bell2023optimizing", "6 ring", "6 ring", "4-qubitOGC", 24, 5.7, true},
    {"Local adaptivity", "bell2023optimizing", "6 ring", "6 ring", "6-qubitOGC", 36, 6.8, false},
    {"Local adaptivity", "bell2023optimizing", "6 ring", "6 ring", "8-qubitOGC", 48, 9.2, false},
    {"Local adaptivity", "bell2023optimizing", "6 ring", "6 ring", "10-qubitOGC", 60, 10.5, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{2,2}", 16, 2.9, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{2,3}", 24, 4.0, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{2,4}", 32, 4.4, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{3,3}", 36, 6.1, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{4,3}", 48, 7.9, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{5,3}", 60, 8.8, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{6,3}", 72, 9.1, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{5,4}", 80, 9.9, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{6,4}", 96, 10.7, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{7,4}", 112, 11.4, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{10,4}", 160, 12.8, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{9,6}", 216, 11.9, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{17,4}", 272, 14.0, false},
    {"Local adaptivity", "songetal", "4star", "4 star", "{14,6}", 336, 13.3, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{2,2}", 24, 4.8, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{2,3}", 36, 6.7, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{4,2}", 48, 7.5, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{3,3}", 54, 9.1, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{4,3}", 72, 10.7, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{5,3}", 90, 11.5, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{6,3}", 108, 11.9, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{5,4}", 120, 12.5, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{6,4}", 144, 13.3, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{7,4}", 168, 14.0, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{10,4}", 240, 14.0, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{9,6}", 324, 14.0, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{17,4}", 408, 12.4, false},
    {"Local adaptivity", "songetal", "6ring", "6 ring", "{12,7}", 504, 13.9, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{2,3}", 36, 5.1, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{3,4}", 72, 7.7, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{4,7}", 168, 11.3, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{5,20}", 600, 16.7, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{7,100}", 4200, 20.8, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{10,1000}", 60000, 23.6, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{13,10000}", 780000, 24.9, false},
    {"Statis bias arrangement", "this paper", "6ring", "6 ring", "{16,100000}", 9600000, 25.6, false},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{2,2}", 24, 2.7, true},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{2,3}", 36, 3.5, true},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{3,4}", 72, 4.8, true},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{4,7}", 168, 5.9, true},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{5,20}", 600, 8.1, false},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{7,100}", 4200, 11.0, false},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{10,1000}", 60000, 13.1, false},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{13,10000}", 780000, 13.9, false},
    {"Randomized failure", "FBQC", "6ring", "6 ring", "{16,100000}", 9600000, 14.3, false},

};

std::string fold(const std::string& s) {
  std::string r;
  for (char c : s) r.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return r;
}

std::string squash(const std::string& s) {
  std::string r;
  for (char c : fold(s))
    if (std::isalnum(static_cast<unsigned char>(c))) r.push_back(c);
  return r;
}

std::optional<ShorCode> parse_code(const std::string& label) {
  if (label.empty() || label.front() != '{') return std::nullopt;
  try {
    return ShorCode::parse(label);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* method_color(const std::string& method) {
  static const std::map<std::string, const char*> colors = {
      {"Exposure based adaptivity", "#1b9e77"},
      {"Local adaptivity", "#d95f02"},
      {"Statis bias arrangement", "#7570b3"},
      {"Randomized failure", "#e7298a"},
      {"computed", "#222222"},
  };
  auto it = colors.find(method);
  return it == colors.end() ? "#666666" : it->second;
}

}  // namespace

const std::vector<ReferenceRow>& load_reference_table() {
  static const std::vector<ReferenceRow> rows = [] {
    std::vector<ReferenceRow> out;
    for (const auto& r : kTable) {
      ReferenceRow row;
      row.adaptivity_method = r.method;
      row.source_ref = r.ref;
      row.fusion_network = r.network;
      row.unencoded_state = r.state;
      row.local_encoding = r.encoding;
      row.code = parse_code(r.encoding);
      row.qubit_count = r.qubits;
      row.lppt = std::round(r.lppt_percent * 10.0) / 1000.0;  // one decimal in percent
      row.boosted = r.boosted;
      out.push_back(std::move(row));
    }
    return out;
  }();
  return rows;
}

std::vector<ReferenceRow> filter_rows(const std::vector<ReferenceRow>& rows,
                                      const std::vector<std::pair<std::string, std::string>>& predicates) {
  auto field = [](const ReferenceRow& r, const std::string& key) -> std::string {
    if (key == "method") return r.adaptivity_method;
    if (key == "ref") return r.source_ref;
    if (key == "network") return r.fusion_network;
    if (key == "state") return r.unencoded_state;
    if (key == "encoding") return r.local_encoding;
    if (key == "qubits") return std::to_string(r.qubit_count);
    if (key == "boosted") return r.boosted ? "true" : "false";
    throw ValidationError("unknown filter key: " + key);
  };
  std::vector<ReferenceRow> out;
  for (const auto& r : rows) {
    bool keep = true;
    for (const auto& [k, v] : predicates) {
      const auto have = fold(field(r, k)), want = fold(v);
      const bool exact = k == "boosted" || k == "qubits";
      if (exact ? have != want : have.find(want) == std::string::npos) keep = false;
    }
    if (keep) out.push_back(r);
  }
  return out;
}

std::optional<std::uint64_t> reference_base_size(const ReferenceRow& row) {
  const auto s = squash(row.unencoded_state);
  if (s == "8ld") return 8;
  if (s == "6ring") return 6;
  if (s == "4star") return 4;
  if (s == "21bp") return 4;  // Bell pair under a {2,1} code
  return std::nullopt;
}

std::optional<GraphState> reference_base_state(const ReferenceRow& row) {
  const auto s = squash(row.unencoded_state);
  if (s == "8ld") return eight_ld_default_graph();
  if (s == "6ring") return build_base_state(ResourceFamily{Family::SixRing, std::nullopt});
  if (s == "4star") return build_base_state(ResourceFamily{Family::FourStar, std::nullopt});
  if (s == "21bp") return apply_shor_encoding(build_base_state(ResourceFamily{Family::BellPair, std::nullopt}), {2, 1});
  return std::nullopt;
}

std::vector<std::string> audit_reference_rows(const std::vector<ReferenceRow>& rows, std::uint64_t build_limit) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = "row " + std::to_string(i) + " (" + r.source_ref + ", " + r.local_encoding + ")";
    if (!(r.lppt > 0.0 && r.lppt < 0.5)) problems.push_back(where + ": threshold out of range");
    if (!r.code) continue;
    const auto base = reference_base_size(r);
    if (!base) {
      problems.push_back(where + ": unknown unencoded state " + r.unencoded_state);
      continue;
    }
    const std::uint64_t expect = *base * r.code->size();
    if (expect != r.qubit_count)
      problems.push_back(where + ": qubit count " + std::to_string(r.qubit_count) + " != " + std::to_string(expect));
    if (r.qubit_count <= build_limit) {
      const auto built = apply_shor_encoding(*reference_base_state(r), *r.code).num_qubits();
      if (built != expect)
        problems.push_back(where + ": encoded state has " + std::to_string(built) + " qubits");
    }
  }
  return problems;
}

std::string series_key(const ReferenceRow& row) {
  return row.adaptivity_method + " | " + row.source_ref + " | " + squash(row.fusion_network);
}

std::vector<FigurePoint> figure_points(const std::vector<ReferenceRow>& rows) {
  std::vector<FigurePoint> pts;
  // Dual-rail qubits carry one photon each.
  for (const auto& r : rows)
    pts.push_back({series_key(r), r.adaptivity_method, static_cast<double>(r.qubit_count), r.lppt, false});
  return pts;
}

std::vector<FigurePoint> envelope(const std::vector<FigurePoint>& points) {
  std::vector<FigurePoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    bool beaten = false;
    for (std::size_t j = 0; j < points.size() && !beaten; ++j) {
      const auto& q = points[j];
      if (i == j || q.series != p.series) continue;
      const bool no_worse = q.photons <= p.photons && q.lppt >= p.lppt;
      const bool better = q.photons < p.photons || q.lppt > p.lppt;
      // Exact duplicates: keep the first.
      if (no_worse && (better || j < i)) beaten = true;
    }
    if (!beaten) out.push_back(p);
  }
  return out;
}

std::string render_svg(const std::vector<FigurePoint>& points) {
  const double W = 720, H = 480, L = 70, R = 690, T = 30, B = 420;
  const double xmin = 1, xmax = 7, ymax = 0.55;
  auto px = [&](double photons) { return L + (std::log10(std::max(photons, 10.0)) - xmin) / (xmax - xmin) * (R - L); };
  auto py = [&](double y) { return B - y / ymax * (B - T); };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
  s += "<rect width=\"" + fmt2(W) + "\" height=\"" + fmt2(H) + "\" fill=\"white\"/>\n";
  s += "<g stroke=\"black\" fill=\"none\"><line x1=\"" + fmt2(L) + "\" y1=\"" + fmt2(B) + "\" x2=\"" + fmt2(R) +
       "\" y2=\"" + fmt2(B) + "\"/><line x1=\"" + fmt2(L) + "\" y1=\"" + fmt2(B) + "\" x2=\"" + fmt2(L) +
       "\" y2=\"" + fmt2(T) + "\"/></g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int d = 1; d <= 7; ++d) {
    const double x = px(std::pow(10.0, d));
    s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(B) + "\" x2=\"" + fmt2(x) + "\" y2=\"" + fmt2(B + 5) +
         "\" stroke=\"black\"/><text x=\"" + fmt2(x) + "\" y=\"" + fmt2(B + 18) + "\" text-anchor=\"middle\">1e" +
         std::to_string(d) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double y = py(0.1 * k);
    s += "<line x1=\"" + fmt2(L - 5) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(L) + "\" y2=\"" + fmt2(y) +
         "\" stroke=\"black\"/><text x=\"" + fmt2(L - 8) + "\" y=\"" + fmt2(y + 4) + "\" text-anchor=\"end\">" +
         std::to_string(10 * k) + "%</text>\n";
  }
  s += "<text x=\"" + fmt2((L + R) / 2) + "\" y=\"" + fmt2(B + 40) +
       "\" text-anchor=\"middle\">photons in resource state</text>\n";
  s += "<text x=\"16\" y=\"" + fmt2((T + B) / 2) + "\" transform=\"rotate(-90 16 " + fmt2((T + B) / 2) +
       ")\" text-anchor=\"middle\">loss per photon threshold</text>\n";
  s += "</g>\n";
  for (double g : {0.293, 0.382, 0.5})
    s += "<line x1=\"" + fmt2(L) + "\" y1=\"" + fmt2(py(g)) + "\" x2=\"" + fmt2(R) + "\" y2=\"" + fmt2(py(g)) +
         "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";

  // Series lines in key order, then points in input order.
  std::map<std::string, std::vector<const FigurePoint*>> series;
  for (const auto& p : points) series[p.series].push_back(&p);
  for (auto& [key, pts] : series) {
    if (pts.size() < 2) continue;
    std::stable_sort(pts.begin(), pts.end(), [](auto a, auto b) { return a->photons < b->photons; });
    s += "<polyline fill=\"none\" stroke=\"" + std::string(method_color(pts[0]->method)) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      s += (i ? " " : "") + fmt2(px(pts[i]->photons)) + "," + fmt2(py(pts[i]->lppt));
    s += "\"/>\n";
  }
  for (const auto& p : points) {
    const std::string c = method_color(p.computed ? "computed" : p.method);
    if (p.computed)
      s += "<rect x=\"" + fmt2(px(p.photons) - 3.5) + "\" y=\"" + fmt2(py(p.lppt) - 3.5) +
           "\" width=\"7.00\" height=\"7.00\" fill=\"" + c + "\"/>\n";
    else
      s += "<circle cx=\"" + fmt2(px(p.photons)) + "\" cy=\"" + fmt2(py(p.lppt)) + "\" r=\"3.00\" fill=\"" + c + "\"/>\n";
  }
  std::set<std::string> methods;
  for (const auto& p : points) methods.insert(p.computed ? "computed" : p.method);
  double ly = T + 10;
  for (const auto& m : methods) {
    s += "<circle cx=\"" + fmt2(R - 170) + "\" cy=\"" + fmt2(ly) + "\" r=\"4.00\" fill=\"" + method_color(m) +
         "\"/><text x=\"" + fmt2(R - 160) + "\" y=\"" + fmt2(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + m + "</text>\n";
    ly += 16;
  }
  s += "</svg>\n";
  return s;
}

double Table1Row::published_gap() const {
  return static_cast<double>(published_cost) / static_cast<double>(lower_bound) - 1.0;
}

double Table1Row::computed_gap() const {
  return static_cast<double>(computed_cost) / static_cast<double>(lower_bound) - 1.0;
}

const std::vector<Table1Target>& table1_targets() {
  static const std::vector<Table1Target> t = {
      {"4star", {2, 2}, 256},   {"6ring", {2, 2}, 1520},  {"8ld", {2, 2}, 1120},
      {"4star", {7, 4}, 12928}, {"6ring", {7, 4}, 66560}, {"8ld", {7, 4}, 52480},
  };
  return t;
}

std::vector<Table1Row> report_table1(std::uint64_t budget, std::uint64_t seed, unsigned threads) {
  std::vector<Table1Row> out;
  for (const auto& t : table1_targets()) {
    const auto family = ResourceFamily::parse(t.family);
    const auto target = apply_shor_encoding(build_base_state(family), t.code);
    OptimizerOptions opt;
    opt.budget = budget;
    opt.seed = seed;
    opt.threads = threads;
    const auto res = optimize_schedule(target, opt);
    Table1Row row;
    row.family = family.name();
    row.code = t.code;
    row.qubits = target.num_qubits();
    row.published_cost = t.published_cost;
    row.computed_cost = res.cost;
    row.lower_bound = lower_bound(row.qubits);
    row.target_matched = res.target_matched;
    row.flagged = row.computed_cost * 10 > CostInt(t.published_cost) * 11;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace fbqc
