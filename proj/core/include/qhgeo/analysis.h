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

// Empirical estimates of the constants in the uniformity conditions.

#ifndef QHGEO_ANALYSIS_H_
#define QHGEO_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qhgeo/domains.h"
#include "qhgeo/metrics.h"
#include "qhgeo/mobius.h"
#include "qhgeo/sampling.h"

namespace qhgeo {

struct AnalysisOptions {
  double rel_tol = 0.02;
  int max_level = 7;
  std::uint64_t seed = 42;
  int threads = 0;  // <= 0: one per core
  Sampler sampler = Sampler::kBoundaryBiased;
};

struct PairEvaluation {
  std::vector<MetricSample> samples;
  int skipped = 0;  // pairs whose evaluation raised an error
};

/// k_metric on every pair in parallel; results keep the input order.
PairEvaluation evaluate_pairs(const Domain& d, std::span<const PointPair> pairs,
                              const AnalysisOptions& opts);

// ---------------------------------------------------------------------------

struct PhiBin {
  double r_edge = 0.0;  // ratio upper edge
  double sup_k = 0.0;   // sup k_est over samples with ratio <= r_edge
  int count = 0;        // samples with ratio <= r_edge
};

/// Monotone envelope of k_est against the distance ratio.
struct PhiProfile {
  std::vector<PhiBin> bins;
  int sample_count = 0;
  int skipped = 0;
  double max_ratio = 0.0;
  std::vector<MetricSample> samples;

  /// Envelope value at r: the bin with the smallest edge >= r. Past the
  /// largest sampled ratio the top value is extended by log(1 + r) growth.
  double evaluate(double r) const;
};

/// Bin edges 0 and 10^(i/4) for i = -16 .. 32.
std::vector<double> phi_bin_edges();

PhiProfile fold_phi_profile(std::vector<MetricSample> samples, int skipped = 0);
PhiProfile phi_profile(const Domain& d, int n_samples, const AnalysisOptions& opts = {});

// ---------------------------------------------------------------------------

/// Rising sup over scale bins, reported when the bins ordered from coarse
/// to fine scale never drop by more than 5% and the last exceeds the first
/// by half.
struct TrendReport {
  std::vector<double> scales;  // bin scales, coarse to fine
  std::vector<double> sups;
  bool unbounded = false;
};

TrendReport detect_trend(std::span<const double> scales, std::span<const double> values);

struct UniformityReport {
  double sup_ratio_kj = 0.0;
  Point witness_x;
  Point witness_y;
  int samples = 0;
  int skipped = 0;
  TrendReport trend;  // scale: min(delta(x), delta(y))
};

UniformityReport uniformity_from_samples(const Domain& d, std::span<const MetricSample> samples,
                                         int skipped = 0);
UniformityReport uniformity_constant(const Domain& d, int n_samples,
                                     const AnalysisOptions& opts = {});
UniformityReport uniformity_constant(const Domain& d, std::span<const PointPair> pairs,
                                     const AnalysisOptions& opts = {});

struct JohnReport {
  double c_est = 0.0;
  Point witness_x;
  Point witness_y;
  Point witness_z;
  int samples = 0;
  int skipped = 0;
  TrendReport trend;  // scale: min(delta(x), delta(y))
};

/// Largest min(l(path[x, z]), l(path[z, y])) / delta(z) over the vertices
/// of a path and eight evenly spaced points on each of its segments.
double john_contribution(const Domain& d, const PolyPath& path, Point* witness = nullptr);
JohnReport john_from_samples(const Domain& d, std::span<const MetricSample> samples,
                             int skipped = 0);
JohnReport john_constant(const Domain& d, int n_samples, const AnalysisOptions& opts = {});

// ---------------------------------------------------------------------------

struct ChainConstants {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double total = 0.0;
};

/// Uniformity constant assembled from a phi-envelope and a cone constant c:
///   b2 = phi(12 c) / log(3/2)
///   b1 = b3 = max(2 (1 + c), (1 + c) / log(3/2) + c)
/// The first branch of b1 covers j(x, x') < log(3/2), where k <= 2 j and
/// j(x, x') <= (1 + c) j(x, y). The second covers the split of the path at
/// the point at length delta(x)/2: the first piece costs at most 1 <=
/// (1 + c) j(x, y) / log(3/2) and the rest at most c j(x, y).
ChainConstants theorem12_constant_chain(const std::function<double(double)>& phi, double c);

// ---------------------------------------------------------------------------

struct CombDivergenceRow {
  int k_index = 0;
  double j_val = 0.0;
  double j_paper_bound = 0.0;  // log(1 + 3/(2t) + 3/2)
  double k_est = 0.0;
  double k_err = 0.0;
  double k_lower_bound = 0.0;  // log((v^k - t^k/2) / (t^k/2))
  double ratio_kj = 0.0;
  bool converged = true;
  PolyPath geodesic;
};

struct CombDivergence {
  CombLayout layout;  // teeth actually generated
  std::vector<CombDivergenceRow> rows;
  double margin = 1.0;
};

/// k and j between consecutive gap witnesses z_k, z_{k+1} in the exterior of
/// the comb, for k in [k_first, k_last]. The comb is generated with at
/// least k_last + 2 teeth so z_{k_last+1} sits between two teeth.
CombDivergence comb_divergence(const CombParams& p, int k_first, int k_last,
                               const AnalysisOptions& opts = {}, double margin = 1.0);

// ---------------------------------------------------------------------------

struct MobiusReport {
  double k_distortion = 1.0;  // max of k'/k and k/k'
  double j_distortion = 1.0;
  Point witness_x;
  Point witness_y;
  int samples = 0;
  int skipped = 0;
};

/// Compares k and j between sampled pairs of d and their images in the image
/// domain of f. Half-plane images are truncated per pair, wide enough to
/// hold the hyperbolic geodesic.
MobiusReport mobius_bilipschitz_check(const Mobius& f, const Domain& d, int n_samples,
                                      const AnalysisOptions& opts = {});

// ---------------------------------------------------------------------------

/// The point z on the segment from y to its nearest boundary point with
/// delta(z) = delta(y)/e, so that j(y, z) = k(y, z) = 1.
Point normalized_partner(const Domain& d, Point y);

struct QsBin {
  double j_ratio_edge = 0.0;
  double sup_k_ratio = 0.0;  // monotone envelope
  int count = 0;
};

struct NormalizedTriple {
  Point x;
  Point y;
  Point z;
  double j_yz = 0.0;
  double k_yz = 0.0;
};

struct QsReport {
  std::vector<QsBin> bins;
  std::vector<NormalizedTriple> normalized;
  int triples = 0;
  int skipped = 0;
};

/// Triples (x, y, z) binned by j(x,y)/j(y,z) with the sup of k(x,y)/k(y,z).
/// A quarter of the triples use the normalized partner z of y.
QsReport qs_identity_sampler(const Domain& d, int n_triples, const AnalysisOptions& opts = {});

}  // namespace qhgeo

#endif  // QHGEO_ANALYSIS_H_
