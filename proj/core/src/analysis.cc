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

#include "qhgeo/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qhgeo/error.h"
#include "qhgeo/parallel.h"

namespace qhgeo {
namespace {

const double kLogThreeHalves = std::log(1.5);
constexpr double kTinyJ = 1e-9;

KOptions k_options(const AnalysisOptions& opts) {
  KOptions k;
  k.rel_tol = opts.rel_tol;
  k.max_level = opts.max_level;
  return k;
}

void require_samples(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "need at least one sample");
}

}  // namespace

PairEvaluation evaluate_pairs(const Domain& d, std::span<const PointPair> pairs,
                              const AnalysisOptions& opts) {
  std::vector<std::optional<MetricSample>> slots(pairs.size());
  const KOptions ko = k_options(opts);
  parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
    try {
      slots[i] = k_metric(d, pairs[i].x, pairs[i].y, ko);
    } catch (const Error&) {
      slots[i].reset();
    }
  });
  PairEvaluation out;
  for (auto& s : slots) {
    if (s) {
      out.samples.push_back(std::move(*s));
    } else {
      ++out.skipped;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// phi profile

std::vector<double> phi_bin_edges() {
  std::vector<double> edges{0.0};
  for (int i = -16; i <= 32; ++i) edges.push_back(std::pow(10.0, i / 4.0));
  return edges;
}

double PhiProfile::evaluate(double r) const {
  if (bins.empty()) return 0.0;
  if (r > max_ratio && max_ratio > 0.0) {
    return bins.back().sup_k * std::log1p(r) / std::log1p(max_ratio);
  }
  for (const PhiBin& b : bins) {
    if (b.r_edge >= r) return b.sup_k;
  }
  return bins.back().sup_k;
}

PhiProfile fold_phi_profile(std::vector<MetricSample> samples, int skipped) {
  PhiProfile out;
  out.skipped = skipped;
  out.sample_count = static_cast<int>(samples.size());
  for (double edge : phi_bin_edges()) out.bins.push_back({edge, 0.0, 0});
  for (const MetricSample& s : samples) {
    out.max_ratio = std::max(out.max_ratio, s.ratio);
    for (PhiBin& b : out.bins) {
      if (s.ratio <= b.r_edge) {
        b.sup_k = std::max(b.sup_k, s.k_est);
        ++b.count;
      }
    }
  }
  // Samples beyond the last edge still bound the top of the envelope.
  for (const MetricSample& s : samples) {
    out.bins.back().sup_k = std::max(out.bins.back().sup_k, s.k_est);
  }
  for (std::size_t i = 1; i < out.bins.size(); ++i) {
    out.bins[i].sup_k = std::max(out.bins[i].sup_k, out.bins[i - 1].sup_k);
  }
  out.samples = std::move(samples);
  return out;
}

PhiProfile phi_profile(const Domain& d, int n_samples, const AnalysisOptions& opts) {
  require_samples(n_samples);
  const auto pairs = sample_pairs(d, n_samples, opts.sampler, opts.seed);
  PairEvaluation ev = evaluate_pairs(d, pairs, opts);
  return fold_phi_profile(std::move(ev.samples), ev.skipped);
}

// ---------------------------------------------------------------------------
// Trends, uniformity and cone constants

TrendReport detect_trend(std::span<const double> scales, std::span<const double> values) {
  // One bin per power of two of the scale, coarse scales first.
  std::map<int, double, std::greater<>> bins;
  for (std::size_t i = 0; i < scales.size() && i < values.size(); ++i) {
    if (!(scales[i] > 0.0)) continue;
    const int key = static_cast<int>(std::floor(std::log2(scales[i])));
    auto [it, fresh] = bins.try_emplace(key, values[i]);
    if (!fresh) it->second = std::max(it->second, values[i]);
  }
  TrendReport out;
  for (const auto& [key, sup] : bins) {
    out.scales.push_back(std::ldexp(1.0, key));
    out.sups.push_back(sup);
  }
  if (out.sups.size() < 3) return out;
  bool rising = true;
  for (std::size_t i = 1; i < out.sups.size(); ++i) {
    if (out.sups[i] < 0.95 * out.sups[i - 1]) rising = false;
  }
  out.unbounded = rising && out.sups.back() > 1.5 * out.sups.front();
  return out;
}

UniformityReport uniformity_from_samples(const Domain& d, std::span<const MetricSample> samples,
                                         int skipped) {
  UniformityReport out;
  out.skipped = skipped;
  std::vector<double> scales;
  std::vector<double> values;
  for (const MetricSample& s : samples) {
    if (s.j < kTinyJ) continue;
    ++out.samples;
    const double r = s.k_est / s.j;
    if (r > out.sup_ratio_kj) {
      out.sup_ratio_kj = r;
      out.witness_x = s.x;
      out.witness_y = s.y;
    }
    scales.push_back(std::min(d.boundary_distance(s.x), d.boundary_distance(s.y)));
    values.push_back(r);
  }
  out.trend = detect_trend(scales, values);
  return out;
}

UniformityReport uniformity_constant(const Domain& d, std::span<const PointPair> pairs,
                                     const AnalysisOptions& opts) {
  PairEvaluation ev = evaluate_pairs(d, pairs, opts);
  return uniformity_from_samples(d, ev.samples, ev.skipped);
}

UniformityReport uniformity_constant(const Domain& d, int n_samples, const AnalysisOptions& opts) {
  require_samples(n_samples);
  const auto pairs = sample_pairs(d, n_samples, opts.sampler, opts.seed);
  return uniformity_constant(d, std::span<const PointPair>(pairs), opts);
}

double john_contribution(const Domain& d, const PolyPath& path, Point* witness) {
  const auto& v = path.vertices();
  if (v.size() < 2) return 0.0;
  const double total = path_length(path);
  constexpr int kSubdivisions = 8;
  double best = 0.0;
  double walked = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double seg = distance(v[i - 1], v[i]);
    for (int s = 1; s <= kSubdivisions; ++s) {
      if (i + 1 == v.size() && s == kSubdivisions) break;  // the endpoint y
      const double f = static_cast<double>(s) / kSubdivisions;
      const Point z = v[i - 1] + f * (v[i] - v[i - 1]);
      const double before = walked + f * seg;
      const double c = std::min(before, total - before) / d.distance_to_chain(z);
      if (c > best) {
        best = c;
        if (witness) *witness = z;
      }
    }
    walked += seg;
  }
  return best;
}

JohnReport john_from_samples(const Domain& d, std::span<const MetricSample> samples, int skipped) {
  JohnReport out;
  out.skipped = skipped;
  std::vector<double> scales;
  std::vector<double> values;
  for (const MetricSample& s : samples) {
    ++out.samples;
    Point z = s.x;
    const double c = john_contribution(d, s.geodesic, &z);
    if (c > out.c_est) {
      out.c_est = c;
      out.witness_x = s.x;
      out.witness_y = s.y;
      out.witness_z = z;
    }
    scales.push_back(std::min(d.boundary_distance(s.x), d.boundary_distance(s.y)));
    values.push_back(c);
  }
  out.trend = detect_trend(scales, values);
  return out;
}

JohnReport john_constant(const Domain& d, int n_samples, const AnalysisOptions& opts) {
  require_samples(n_samples);
  const auto pairs = sample_pairs(d, n_samples, opts.sampler, opts.seed);
  PairEvaluation ev = evaluate_pairs(d, pairs, opts);
  return john_from_samples(d, ev.samples, ev.skipped);
}

ChainConstants theorem12_constant_chain(const std::function<double(double)>& phi, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidParams, "cone constant must be positive");
  }
  ChainConstants out;
  // Middle piece: the cut points x', y' are at least |x-y|/(10c) from the
  // boundary and at most 1.2|x-y| apart, and j(x, y) >= log(3/2).
  out.b2 = phi(12.0 * c) / kLogThreeHalves;
  // End pieces: j(x, x') <= (1 + c) j(x, y); either k <= 2 j (small j) or
  // the half-ball piece plus the cone piece.
  out.b1 = std::max(2.0 * (1.0 + c), (1.0 + c) / kLogThreeHalves + c);
  out.b3 = out.b1;
  out.total = out.b1 + out.b2 + out.b3;
  return out;
}

// ---------------------------------------------------------------------------
// Comb complement

CombDivergence comb_divergence(const CombParams& p, int k_first, int k_last,
                               const AnalysisOptions& opts, double margin) {
  if (k_first < 1 || k_last < k_first) {
    throw Error(ErrorCode::kInvalidParams, "need 1 <= k_first <= k_last");
  }
  CombParams q = p;
  q.k_max = std::max(p.k_max, k_last + 2);
  CombDivergence out;
  const Domain dom = build_comb_complement(q, margin);
  out.layout = comb_layout(q);
  out.margin = margin;
  const double t = q.t;
  const double v = q.v;
  const int n = k_last - k_first + 1;
  out.rows.resize(n);
  const KOptions ko = k_options(opts);
  parallel_for(static_cast<std::size_t>(n), opts.threads, [&](std::size_t i) {
    const int k = k_first + static_cast<int>(i);
    const Point a = out.layout.witness(k);
    const Point b = out.layout.witness(k + 1);
    CombDivergenceRow& row = out.rows[i];
    row.k_index = k;
    row.j_paper_bound = std::log(1.0 + 3.0 / (2.0 * t) + 1.5);
    const double half_gap = 0.5 * std::pow(t, k);
    row.k_lower_bound = std::log((std::pow(v, k) - half_gap) / half_gap);
    const MetricSample s = k_metric(dom, a, b, ko);
    row.j_val = s.j;
    row.k_est = s.k_est;
    row.k_err = s.k_err;
    row.converged = s.converged;
    row.ratio_kj = s.k_est / s.j;
    row.geodesic = s.geodesic;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Mobius distortion

MobiusReport mobius_bilipschitz_check(const Mobius& f, const Domain& d, int n_samples,
                                      const AnalysisOptions& opts) {
  require_samples(n_samples);
  const auto pairs = sample_pairs(d, n_samples, opts.sampler, opts.seed);
  struct Slot {
    bool ok = false;
    double k_dist = 1.0;
    double j_dist = 1.0;
  };
  std::vector<Slot> slots(pairs.size());
  const KOptions ko = k_options(opts);
  parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
    const Point x = pairs[i].x;
    const Point y = pairs[i].y;
    if (x == y || f.is_pole(x) || f.is_pole(y)) return;
    try {
      const Point fx = f.apply(x);
      const Point fy = f.apply(y);
      const double reach = 2.0 * (std::max(norm(fx), norm(fy)) + distance(fx, fy)) + 1.0;
      const Domain image = image_domain(f, d, reach);
      const MetricSample a = k_metric(d, x, y, ko);
      const MetricSample b = k_metric(image, fx, fy, ko);
      if (!(a.k_est > 0.0 && b.k_est > 0.0 && a.j > 0.0 && b.j > 0.0)) return;
      slots[i] = {true, std::max(a.k_est / b.k_est, b.k_est / a.k_est),
                  std::max(a.j / b.j, b.j / a.j)};
    } catch (const Error&) {
      slots[i].ok = false;
    }
  });
  MobiusReport out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].ok) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    if (slots[i].k_dist > out.k_distortion) {
      out.witness_x = pairs[i].x;
      out.witness_y = pairs[i].y;
    }
    out.k_distortion = std::max(out.k_distortion, slots[i].k_dist);
    out.j_distortion = std::max(out.j_distortion, slots[i].j_dist);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quasisymmetry sampler

Point normalized_partner(const Domain& d, Point y) {
  d.boundary_distance(y);  // throws unless y is Inside
  const ClosestPoint cp = d.closest_boundary_point(y);
  return cp.point + std::exp(-1.0) * (y - cp.point);
}

QsReport qs_identity_sampler(const Domain& d, int n_triples, const AnalysisOptions& opts) {
  require_samples(n_triples);
  struct Triple {
    Point x, y, z;
    bool normalized;
  };
  std::mt19937_64 rng(opts.seed);
  std::vector<Triple> triples;
  for (int i = 0; i < n_triples; ++i) {
    const Point x = sample_uniform(d, rng);
    const Point y = sample_uniform(d, rng);
    const bool normalized = i % 4 == 3;
    const Point z = normalized ? normalized_partner(d, y) : sample_uniform(d, rng);
    triples.push_back({x, y, z, normalized});
  }
  struct Slot {
    bool ok = false;
    double j_ratio = 0.0;
    double k_ratio = 0.0;
    double j_yz = 0.0;
    double k_yz = 0.0;
  };
  std::vector<Slot> slots(triples.size());
  const KOptions ko = k_options(opts);
  parallel_for(triples.size(), opts.threads, [&](std::size_t i) {
    const Triple& t = triples[i];
    if (t.x == t.y || t.y == t.z || t.x == t.z) return;
    try {
      const MetricSample xy = k_metric(d, t.x, t.y, ko);
      const MetricSample yz = k_metric(d, t.y, t.z, ko);
      if (!(yz.j > 0.0 && yz.k_est > 0.0)) return;
      slots[i] = {true, xy.j / yz.j, xy.k_est / yz.k_est, yz.j, yz.k_est};
    } catch (const Error&) {
      slots[i].ok = false;
    }
  });

  QsReport out;
  for (int e = -12; e <= 20; ++e) out.bins.push_back({std::ldexp(1.0, e), 0.0, 0});
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    if (!s.ok) {
      ++out.skipped;
      continue;
    }
    ++out.triples;
    if (triples[i].normalized) {
      out.normalized.push_back({triples[i].x, triples[i].y, triples[i].z, s.j_yz, s.k_yz});
    }
    for (QsBin& b : out.bins) {
      if (s.j_ratio <= b.j_ratio_edge) {
        b.sup_k_ratio = std::max(b.sup_k_ratio, s.k_ratio);
        ++b.count;
      }
    }
    out.bins.back().sup_k_ratio = std::max(out.bins.back().sup_k_ratio, s.k_ratio);
  }
  for (std::size_t i = 1; i < out.bins.size(); ++i) {
    out.bins[i].sup_k_ratio = std::max(out.bins[i].sup_k_ratio, out.bins[i - 1].sup_k_ratio);
  }
  return out;
}

}  // namespace qhgeo
