// Copyright 2026 The qhgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qhgeo/analysis.h"
#include "qhgeo/domain_io.h"
#include "qhgeo/domains.h"
#include "qhgeo/error.h"
#include "qhgeo/metrics.h"
#include "qhgeo/mobius.h"
#include "qhgeo/parallel.h"
#include "qhgeo/sampling.h"
#include "qhgeo/svg.h"

namespace qhgeo::cli {
namespace {

using json = nlohmann::json;

struct RunConfig {
  std::uint64_t seed = 42;
  double rel_tol = 0.02;
  int max_level = 7;
  std::string format = "json";
  std::string plot;  // svg path, empty for none
  std::string out;   // output path, empty for stdout
  int threads = 0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::kInvalidParams, "expected a point 'a,b', got '" + s + "'");
  }
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    Point p{std::stod(a, &used_a), std::stod(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(s);
    return p;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidParams, "expected a point 'a,b', got '" + s + "'");
  }
}

std::vector<PointPair> read_pairs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::vector<PointPair> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string field;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::logic_error&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": not numeric");
    }
    if (v.size() < 4) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": need x1,y1,x2,y2");
    }
    pairs.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return pairs;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidParams, "cannot write '" + cfg.out + "'");
  f << text;
}

void save_plot(const RunConfig& cfg, const SvgPlot& plot) {
  if (!cfg.plot.empty()) plot.save(cfg.plot);
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json path_json(const PolyPath& path) {
  json a = json::array();
  for (Point p : path.vertices()) a.push_back(point_json(p));
  return a;
}

AnalysisOptions analysis_options(const RunConfig& cfg, const std::string& sampler) {
  AnalysisOptions o;
  o.rel_tol = cfg.rel_tol;
  o.max_level = cfg.max_level;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.sampler = parse_sampler(sampler);
  return o;
}

KOptions k_options(const RunConfig& cfg) {
  KOptions k;
  k.rel_tol = cfg.rel_tol;
  k.max_level = cfg.max_level;
  return k;
}

// Box around the sampled geodesics, padded, clipped to the domain extent.
std::optional<Box> view_of(const Domain& d, const std::vector<const PolyPath*>& paths) {
  if (d.bounded()) return std::nullopt;
  Box b{{1e300, 1e300}, {-1e300, -1e300}};
  bool any = false;
  for (const PolyPath* p : paths) {
    for (Point v : p->vertices()) {
      b.min = {std::min(b.min.x, v.x), std::min(b.min.y, v.y)};
      b.max = {std::max(b.max.x, v.x), std::max(b.max.y, v.y)};
      any = true;
    }
  }
  if (!any) return std::nullopt;
  const double pad = 0.25 * std::max({b.width(), b.height(), 1e-3});
  return Box{{b.min.x - pad, b.min.y - pad}, {b.max.x + pad, b.max.y + pad}};
}

// ---------------------------------------------------------------------------

struct DomainArgs {
  std::string catalog;
  CombParams comb;
  double margin = 1.0;
};

void cmd_domain_build(const RunConfig& cfg, const DomainArgs& a, std::ostream& out) {
  Domain d = [&] {
    if (a.catalog == "comb") return build_comb(a.comb).first;
    if (a.catalog == "comb-complement") return build_comb_complement(a.comb, a.margin);
    return build_catalog(a.catalog);
  }();
  emit(cfg, domain_to_json(d) + "\n", out);
}

struct MetricArgs {
  std::string kind;
  std::string domain;
  std::string x;
  std::string y;
  std::string pairs;
};

json sample_json(const MetricSample& s, bool with_k) {
  json r;
  r["x"] = point_json(s.x);
  r["y"] = point_json(s.y);
  r["j"] = s.j;
  r["ratio"] = s.ratio;
  if (with_k) {
    r["k_est"] = s.k_est;
    r["k_err"] = s.k_err;
    r["converged"] = s.converged;
    r["level"] = s.level;
    r["geodesic"] = path_json(s.geodesic);
  }
  return r;
}

// Returns true when every k estimate converged.
bool cmd_metric(const RunConfig& cfg, const MetricArgs& a, std::ostream& out) {
  const Domain d = resolve_domain(a.domain);
  const bool with_k = a.kind == "k";
  std::vector<PointPair> pairs;
  if (!a.pairs.empty()) {
    if (!a.x.empty() || !a.y.empty()) {
      throw Error(ErrorCode::kInvalidParams, "--pairs excludes --x/--y");
    }
    pairs = read_pairs_csv(a.pairs);
  } else {
    if (a.x.empty() || a.y.empty()) throw Error(ErrorCode::kInvalidParams, "need --x and --y");
    pairs.push_back({parse_point(a.x), parse_point(a.y)});
  }

  std::vector<MetricSample> samples(pairs.size());
  const KOptions ko = k_options(cfg);
  parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
    try {
      if (with_k) {
        samples[i] = k_metric(d, pairs[i].x, pairs[i].y, ko);
      } else {
        samples[i].x = pairs[i].x;
        samples[i].y = pairs[i].y;
        samples[i].j = j_metric(d, pairs[i].x, pairs[i].y);
        samples[i].ratio = distance_ratio(d, pairs[i].x, pairs[i].y);
      }
    } catch (const Error& e) {
      if (pairs.size() == 1) throw;
      throw Error(e.code(), "pair " + std::to_string(i + 1) + ": " + e.what());
    }
  });

  std::string text;
  if (cfg.format == "csv") {
    text = with_k ? "x1,y1,x2,y2,j,k_est,k_err,ratio\n" : "x1,y1,x2,y2,j,ratio\n";
    for (const auto& s : samples) {
      text += num(s.x.x) + "," + num(s.x.y) + "," + num(s.y.x) + "," + num(s.y.y) + "," + num(s.j);
      if (with_k) text += "," + num(s.k_est) + "," + num(s.k_err);
      text += "," + num(s.ratio) + "\n";
    }
  } else if (a.pairs.empty()) {
    text = sample_json(samples[0], with_k).dump(2) + "\n";
  } else {
    json arr = json::array();
    for (const auto& s : samples) arr.push_back(sample_json(s, with_k));
    text = arr.dump(2) + "\n";
  }
  emit(cfg, text, out);

  if (!cfg.plot.empty()) {
    std::vector<const PolyPath*> paths;
    for (const auto& s : samples) paths.push_back(&s.geodesic);
    SvgPlot plot(d, view_of(d, paths));
    for (const auto& s : samples) {
      if (with_k) plot.add_path(s.geodesic);
      plot.add_marker(s.x);
      plot.add_marker(s.y);
    }
    save_plot(cfg, plot);
  }
  bool ok = true;
  for (const auto& s : samples) ok = ok && (!with_k || s.converged);
  return ok;
}

struct ProfileArgs {
  std::string kind;
  std::string domain;
  int samples = 200;
  std::string sampler = "boundary-biased";
};

void plot_samples(const RunConfig& cfg, const Domain& d, const std::vector<MetricSample>& samples,
                  const std::vector<Point>& witnesses) {
  if (cfg.plot.empty()) return;
  std::vector<const PolyPath*> paths;
  for (const auto& s : samples) paths.push_back(&s.geodesic);
  SvgPlot plot(d, view_of(d, paths));
  for (const auto& s : samples) plot.add_path(s.geodesic, "#9ecae1");
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    plot.add_marker(witnesses[i], std::string(1, static_cast<char>('x' + i)));
  }
  save_plot(cfg, plot);
}

json trend_json(const TrendReport& t) {
  return {{"scales", t.scales}, {"sups", t.sups}, {"unbounded", t.unbounded}};
}

void cmd_profile(const RunConfig& cfg, const ProfileArgs& a, std::ostream& out) {
  const Domain d = resolve_domain(a.domain);
  const AnalysisOptions opts = analysis_options(cfg, a.sampler);
  if (a.samples < 1) throw Error(ErrorCode::kInvalidParams, "--samples must be positive");
  const auto pairs = sample_pairs(d, a.samples, opts.sampler, opts.seed);
  PairEvaluation ev = evaluate_pairs(d, pairs, opts);
  const bool csv = cfg.format == "csv";
  std::string text;

  if (a.kind == "phi") {
    const PhiProfile p = fold_phi_profile(ev.samples, ev.skipped);
    if (csv) {
      text = "r_edge,sup_k,count\n";
      for (const auto& b : p.bins) {
        text += num(b.r_edge) + "," + num(b.sup_k) + "," + std::to_string(b.count) + "\n";
      }
    } else {
      json bins = json::array();
      for (const auto& b : p.bins) {
        bins.push_back({{"r_edge", b.r_edge}, {"sup_k", b.sup_k}, {"count", b.count}});
      }
      text = json{{"bins", bins},
                  {"sample_count", p.sample_count},
                  {"skipped", p.skipped},
                  {"max_ratio", p.max_ratio}}
                 .dump(2) +
             "\n";
    }
    plot_samples(cfg, d, ev.samples, {});
  } else if (a.kind == "uniformity") {
    const UniformityReport r = uniformity_from_samples(d, ev.samples, ev.skipped);
    if (csv) {
      text =
          "sup_ratio_kj,witness_x_1,witness_x_2,witness_y_1,witness_y_2,samples,skipped,"
          "unbounded_trend\n";
      text += num(r.sup_ratio_kj) + "," + num(r.witness_x.x) + "," + num(r.witness_x.y) + "," +
              num(r.witness_y.x) + "," + num(r.witness_y.y) + "," + std::to_string(r.samples) +
              "," + std::to_string(r.skipped) + "," + (r.trend.unbounded ? "1" : "0") + "\n";
    } else {
      text = json{{"sup_ratio_kj", r.sup_ratio_kj},
                  {"witness_x", point_json(r.witness_x)},
                  {"witness_y", point_json(r.witness_y)},
                  {"samples", r.samples},
                  {"skipped", r.skipped},
                  {"trend", trend_json(r.trend)}}
                 .dump(2) +
             "\n";
    }
    plot_samples(cfg, d, ev.samples, {r.witness_x, r.witness_y});
  } else {
    const JohnReport r = john_from_samples(d, ev.samples, ev.skipped);
    if (csv) {
      text =
          "c_est,witness_x_1,witness_x_2,witness_y_1,witness_y_2,witness_z_1,witness_z_2,"
          "samples,skipped,unbounded_trend\n";
      text += num(r.c_est) + "," + num(r.witness_x.x) + "," + num(r.witness_x.y) + "," +
              num(r.witness_y.x) + "," + num(r.witness_y.y) + "," + num(r.witness_z.x) + "," +
              num(r.witness_z.y) + "," + std::to_string(r.samples) + "," +
              std::to_string(r.skipped) + "," + (r.trend.unbounded ? "1" : "0") + "\n";
    } else {
      text = json{{"c_est", r.c_est},
                  {"witness_x", point_json(r.witness_x)},
                  {"witness_y", point_json(r.witness_y)},
                  {"witness_z", point_json(r.witness_z)},
                  {"samples", r.samples},
                  {"skipped", r.skipped},
                  {"trend", trend_json(r.trend)}}
                 .dump(2) +
             "\n";
    }
    plot_samples(cfg, d, ev.samples, {r.witness_x, r.witness_y, r.witness_z});
  }
  emit(cfg, text, out);
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  CombParams comb;
  int k_first = 1;
  int k_last = 5;
  double margin = 1.0;
  std::string domain = "disc";
  std::string map = "cayley";
  int samples = 100;
  std::string sampler = "boundary-biased";
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
};

void cmd_comb_divergence(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out) {
  const AnalysisOptions opts = analysis_options(cfg, a.sampler);
  CombParams p = a.comb;
  validate(p);
  const CombDivergence cd = comb_divergence(p, a.k_first, a.k_last, opts, a.margin);
  std::string text;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : cd.rows) {
      rows.push_back({{"k_index", r.k_index},
                      {"j_val", r.j_val},
                      {"j_paper_bound", r.j_paper_bound},
                      {"k_est", r.k_est},
                      {"k_err", r.k_err},
                      {"k_lower_bound", r.k_lower_bound},
                      {"ratio_kj", r.ratio_kj},
                      {"converged", r.converged},
                      {"geodesic", path_json(r.geodesic)}});
    }
    text = json{{"alpha", cd.layout.alpha}, {"rows", rows}}.dump(2) + "\n";
  } else {
    text = "k_index,j_val,j_paper_bound,k_est,k_err,k_lower_bound,ratio_kj\n";
    for (const auto& r : cd.rows) {
      text += std::to_string(r.k_index) + "," + num(r.j_val) + "," + num(r.j_paper_bound) + "," +
              num(r.k_est) + "," + num(r.k_err) + "," + num(r.k_lower_bound) + "," +
              num(r.ratio_kj) + "\n";
    }
  }
  emit(cfg, text, out);

  if (!cfg.plot.empty()) {
    const Domain d = build_comb_complement(cd.layout.params, a.margin);
    const CombLayout& L = cd.layout;
    const double right = L.x.back() + 0.05;
    const double top = std::max(L.tooth_height(1), 0.1) * 1.1;
    SvgPlot plot(d, Box{{-0.05, -0.1 * top}, {right, top}});
    for (const auto& r : cd.rows) plot.add_path(r.geodesic);
    for (int k = 1; k <= static_cast<int>(L.z.size()); ++k) {
      plot.add_marker(L.witness(k), "z" + std::to_string(k));
    }
    save_plot(cfg, plot);
  }
}

void cmd_mobius(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out) {
  const AnalysisOptions opts = analysis_options(cfg, a.sampler);
  std::optional<Mobius> f;
  Domain d = build_disc();
  if (a.map == "cayley") {
    f = Mobius::cayley();
  } else if (a.map == "inverse-cayley") {
    f = Mobius::cayley().inverse();
    d = build_half_plane();
  } else if (a.map == "similarity") {
    f = Mobius(2.0, 1.0, 0.0, 1.0);
  } else {
    throw Error(ErrorCode::kInvalidParams, "unknown map '" + a.map + "'");
  }
  const MobiusReport r = mobius_bilipschitz_check(*f, d, a.samples, opts);
  std::string text;
  if (cfg.format == "json") {
    text = json{{"map", a.map},
                {"k_distortion", r.k_distortion},
                {"j_distortion", r.j_distortion},
                {"witness_x", point_json(r.witness_x)},
                {"witness_y", point_json(r.witness_y)},
                {"samples", r.samples},
                {"skipped", r.skipped}}
               .dump(2) +
           "\n";
  } else {
    text = "map,k_distortion,j_distortion,witness_x_1,witness_x_2,witness_y_1,witness_y_2,"
           "samples,skipped\n";
    text += a.map + "," + num(r.k_distortion) + "," + num(r.j_distortion) + "," +
            num(r.witness_x.x) + "," + num(r.witness_x.y) + "," + num(r.witness_y.x) + "," +
            num(r.witness_y.y) + "," + std::to_string(r.samples) + "," +
            std::to_string(r.skipped) + "\n";
  }
  emit(cfg, text, out);
}

void cmd_qs(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out) {
  const Domain d = resolve_domain(a.domain);
  const QsReport r = qs_identity_sampler(d, a.samples, analysis_options(cfg, a.sampler));
  std::string text;
  if (cfg.format == "json") {
    json bins = json::array();
    for (const auto& b : r.bins) {
      bins.push_back(
          {{"j_ratio_edge", b.j_ratio_edge}, {"sup_k_ratio", b.sup_k_ratio}, {"count", b.count}});
    }
    json norm = json::array();
    for (const auto& t : r.normalized) {
      norm.push_back({{"x", point_json(t.x)},
                      {"y", point_json(t.y)},
                      {"z", point_json(t.z)},
                      {"j_yz", t.j_yz},
                      {"k_yz", t.k_yz}});
    }
    text = json{{"bins", bins}, {"normalized", norm}, {"triples", r.triples}, {"skipped", r.skipped}}
               .dump(2) +
           "\n";
  } else {
    text = "j_ratio_edge,sup_k_ratio,count\n";
    for (const auto& b : r.bins) {
      text += num(b.j_ratio_edge) + "," + num(b.sup_k_ratio) + "," + std::to_string(b.count) + "\n";
    }
  }
  emit(cfg, text, out);
}

// phi-envelope, cone constant and the uniformity constant from one sample
// set, plus the constant the chain assembles from the first two.
void cmd_chain(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out) {
  const Domain d = resolve_domain(a.domain);
  const AnalysisOptions opts = analysis_options(cfg, a.sampler);
  if (a.samples < 1) throw Error(ErrorCode::kInvalidParams, "--samples must be positive");
  const auto pairs = sample_pairs(d, a.samples, opts.sampler, opts.seed);
  const PairEvaluation ev = evaluate_pairs(d, pairs, opts);
  const PhiProfile phi = fold_phi_profile(ev.samples, ev.skipped);
  const JohnReport john = john_from_samples(d, ev.samples, ev.skipped);
  const UniformityReport uni = uniformity_from_samples(d, ev.samples, ev.skipped);
  const ChainConstants c =
      theorem12_constant_chain([&](double r) { return phi.evaluate(r); }, john.c_est);
  const bool consistent = uni.sup_ratio_kj <= c.total;
  std::string text;
  if (cfg.format == "json") {
    text = json{{"c_est", john.c_est},
                {"b1", c.b1},
                {"b2", c.b2},
                {"b3", c.b3},
                {"total", c.total},
                {"sup_ratio_kj", uni.sup_ratio_kj},
                {"consistent", consistent},
                {"samples", uni.samples},
                {"skipped", uni.skipped}}
               .dump(2) +
           "\n";
  } else {
    text = "c_est,b1,b2,b3,total,sup_ratio_kj,consistent\n";
    text += num(john.c_est) + "," + num(c.b1) + "," + num(c.b2) + "," + num(c.b3) + "," +
            num(c.total) + "," + num(uni.sup_ratio_kj) + "," + (consistent ? "1" : "0") + "\n";
  }
  emit(cfg, text, out);
}

// Symmetric pairs (0.5, +-eps) across the slit of the slit disc.
void cmd_slit_trend(const RunConfig& cfg, const ExperimentArgs& a, std::ostream& out) {
  const Domain d = build_slit_disc();
  std::vector<MetricSample> rows(a.eps.size());
  const KOptions ko = k_options(cfg);
  parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    rows[i] = k_metric(d, {0.5, a.eps[i]}, {0.5, -a.eps[i]}, ko);
  });
  std::string text;
  if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      arr.push_back({{"eps", a.eps[i]},
                     {"j", rows[i].j},
                     {"k_est", rows[i].k_est},
                     {"k_err", rows[i].k_err},
                     {"ratio_kj", rows[i].k_est / rows[i].j}});
    }
    text = arr.dump(2) + "\n";
  } else {
    text = "eps,j,k_est,k_err,ratio_kj\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      text += num(a.eps[i]) + "," + num(rows[i].j) + "," + num(rows[i].k_est) + "," +
              num(rows[i].k_err) + "," + num(rows[i].k_est / rows[i].j) + "\n";
    }
  }
  emit(cfg, text, out);
  if (!cfg.plot.empty()) {
    SvgPlot plot(d);
    for (const auto& r : rows) {
      plot.add_path(r.geodesic);
      plot.add_marker(r.x);
      plot.add_marker(r.y);
    }
    save_plot(cfg, plot);
  }
}

struct PlotArgs {
  std::string domain;
  std::string x;
  std::string y;
  int width = 800;
};

void cmd_plot(const RunConfig& cfg, const PlotArgs& a, std::ostream& out) {
  const Domain d = resolve_domain(a.domain);
  if (a.x.empty() != a.y.empty()) throw Error(ErrorCode::kInvalidParams, "need both --x and --y");
  std::optional<MetricSample> s;
  if (!a.x.empty()) s = k_metric(d, parse_point(a.x), parse_point(a.y), k_options(cfg));
  std::optional<Box> view;
  if (s) view = view_of(d, {&s->geodesic});
  SvgPlot plot(d, view);
  if (s) {
    plot.add_path(s->geodesic);
    plot.add_marker(s->x, "x");
    plot.add_marker(s->y, "y");
  }
  emit(cfg, plot.render(a.width), out);
}

int usage_exit(ErrorCode c) {
  switch (c) {
    case ErrorCode::kDisconnected:
    case ErrorCode::kNoConvergence:
    case ErrorCode::kEmptyGrid:
    case ErrorCode::kPathExitsDomain:
    case ErrorCode::kVertexNotOnPath:
      return 1;
    default:
      return 2;
  }
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.seed = default_seed();

  CLI::App app{"Quasihyperbolic and distance-ratio metrics on planar domains", "qhgeo"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values");
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", cfg.seed, "Random seed (env QHGEO_SEED overrides the default)");
  app.add_option("--rel-tol", cfg.rel_tol, "Relative tolerance of k estimates")
      ->check(CLI::Range(1e-12, 0.5));
  app.add_option("--max-level", cfg.max_level, "Refinement levels per k estimate")
      ->check(CLI::Range(1, 10));
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--plot", cfg.plot, "Write an SVG plot to this path");
  app.add_option("--out", cfg.out, "Write results here instead of stdout");
  app.add_option("--threads", cfg.threads, "Worker threads (0: one per core)")
      ->check(CLI::NonNegativeNumber);
  app.fallthrough();

  // domain
  DomainArgs da;
  auto* domain = app.add_subcommand("domain", "Build and serialize domains");
  domain->require_subcommand(1);
  domain->fallthrough();
  auto* dbuild = domain->add_subcommand("build", "Write a catalog domain as JSON");
  dbuild->fallthrough();
  dbuild->add_option("--catalog", da.catalog, "Catalog name")
      ->required()
      ->check(CLI::IsMember(catalog_names()));
  dbuild->add_option("--u", da.comb.u, "Comb tooth scale");
  dbuild->add_option("--t", da.comb.t, "Comb gap scale");
  dbuild->add_option("--v", da.comb.v, "Comb tooth height scale");
  dbuild->add_option("--kmax", da.comb.k_max, "Number of comb teeth");
  dbuild->add_option("--margin", da.margin, "Comb complement truncation margin");

  // metric
  MetricArgs ma;
  auto* metric = app.add_subcommand("metric", "Evaluate j or k between points");
  metric->fallthrough();
  metric->add_option("kind", ma.kind, "j or k")->required()->check(CLI::IsMember({"j", "k"}));
  metric->add_option("--domain", ma.domain, "Catalog name or JSON file")->required();
  metric->add_option("--x", ma.x, "First point a,b");
  metric->add_option("--y", ma.y, "Second point c,d");
  metric->add_option("--pairs", ma.pairs, "CSV file with columns x1,y1,x2,y2");

  // profile
  ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "Sampled envelopes and constants");
  profile->fallthrough();
  profile->add_option("kind", pa.kind, "phi, uniformity or john")
      ->required()
      ->check(CLI::IsMember({"phi", "uniformity", "john"}));
  profile->add_option("--domain", pa.domain, "Catalog name or JSON file")->required();
  profile->add_option("--samples", pa.samples, "Number of point pairs");
  profile->add_option("--sampler", pa.sampler, "uniform or boundary-biased")
      ->check(CLI::IsMember({"uniform", "boundary-biased"}));

  // experiment
  ExperimentArgs ea;
  std::string experiment_kind;
  auto* experiment = app.add_subcommand("experiment", "Reproducible experiment tables");
  experiment->fallthrough();
  experiment->add_option("kind", experiment_kind)
      ->required()
      ->check(CLI::IsMember({"comb-divergence", "mobius", "qs", "chain", "slit-trend"}));
  experiment->add_option("--u", ea.comb.u, "Comb tooth scale");
  experiment->add_option("--t", ea.comb.t, "Comb gap scale");
  experiment->add_option("--v", ea.comb.v, "Comb tooth height scale");
  experiment->add_option("--kmin", ea.k_first, "First comb row");
  experiment->add_option("--kmax", ea.k_last, "Last comb row");
  experiment->add_option("--margin", ea.margin, "Comb complement truncation margin");
  experiment->add_option("--domain", ea.domain, "Domain for qs and chain");
  experiment->add_option("--map", ea.map, "cayley, inverse-cayley or similarity")
      ->check(CLI::IsMember({"cayley", "inverse-cayley", "similarity"}));
  experiment->add_option("--samples", ea.samples, "Number of pairs or triples");
  experiment->add_option("--sampler", ea.sampler, "uniform or boundary-biased")
      ->check(CLI::IsMember({"uniform", "boundary-biased"}));
  experiment->add_option("--eps", ea.eps, "Slit offsets")->delimiter(',');

  // plot
  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Render a domain (and a geodesic) as SVG");
  plot->fallthrough();
  plot->add_option("--domain", pl.domain, "Catalog name or JSON file")->required();
  plot->add_option("--x", pl.x, "First point a,b");
  plot->add_option("--y", pl.y, "Second point c,d");
  plot->add_option("--width", pl.width, "Width in pixels")->check(CLI::Range(16, 20000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (domain->parsed()) {
      if (cfg.format == "csv") throw Error(ErrorCode::kInvalidParams, "domains are JSON only");
      cmd_domain_build(cfg, da, out);
    } else if (metric->parsed()) {
      if (!cmd_metric(cfg, ma, out)) {
        write_error(err, to_string(ErrorCode::kNoConvergence),
                    "k estimate did not reach --rel-tol within --max-level levels");
        return 1;
      }
    } else if (profile->parsed()) {
      if (!app.get_option("--format")->count()) cfg.format = "csv";
      cmd_profile(cfg, pa, out);
    } else if (experiment->parsed()) {
      if (!app.get_option("--format")->count()) cfg.format = "csv";
      if (experiment_kind == "comb-divergence") {
        cmd_comb_divergence(cfg, ea, out);
      } else if (experiment_kind == "mobius") {
        cmd_mobius(cfg, ea, out);
      } else if (experiment_kind == "qs") {
        cmd_qs(cfg, ea, out);
      } else if (experiment_kind == "chain") {
        cmd_chain(cfg, ea, out);
      } else {
        cmd_slit_trend(cfg, ea, out);
      }
    } else if (plot->parsed()) {
      cmd_plot(cfg, pl, out);
    }
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return usage_exit(e.code());
  } catch (const std::exception& e) {
    write_error(err, "Internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace qhgeo::cli
