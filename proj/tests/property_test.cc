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

// Seeded randomized checks of metric inequalities. Every generator is a
// fixed-seed std::mt19937_64, so failures reproduce exactly.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhgeo/domain_io.h"
#include "qhgeo/domains.h"
#include "qhgeo/error.h"
#include "qhgeo/metrics.h"
#include "qhgeo/sampling.h"

namespace qhgeo {
namespace {

Point random_point(const Domain& d, std::mt19937_64& rng) { return sample_uniform(d, rng); }

// A point at distance at most frac * delta(p) from p.
Point nearby(const Domain& d, Point p, double frac, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  const double r = frac * d.boundary_distance(p) * std::sqrt(u(rng));
  const double a = kTwoPi * u(rng);
  return p + Point{r * std::cos(a), r * std::sin(a)};
}

class PerDomain : public ::testing::TestWithParam<std::string> {};

TEST_P(PerDomain, JIsAMetric) {
  const Domain d = build_catalog(GetParam());
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const Point z = random_point(d, rng);
    const double xy = j_metric(d, x, y);
    EXPECT_EQ(xy, j_metric(d, y, x));
    EXPECT_GT(xy, 0.0);
    EXPECT_LE(xy, j_metric(d, x, z) + j_metric(d, z, y) + 1e-12);
  }
}

TEST_P(PerDomain, PolygonalPathsAreAtLeastJ) {
  // k is an infimum over paths and j <= k, so any path inside is >= j.
  const Domain d = build_catalog(GetParam());
  std::mt19937_64 rng(102);
  int tested = 0;
  for (int i = 0; i < 200 && tested < 60; ++i) {
    const Point x = random_point(d, rng);
    const Point m = nearby(d, x, 0.9, rng);
    const Point y = nearby(d, m, 0.9, rng);
    if (!d.is_inside(m) || !d.is_inside(y) || x == y) continue;
    const PolyPath path({x, m, y});
    double len = 0.0;
    try {
      len = qh_length(d, path);
    } catch (const Error&) {
      continue;
    }
    EXPECT_GE(len, j_metric(d, x, y) * (1 - 1e-12));
    ++tested;
  }
  EXPECT_GT(tested, 30);
}

TEST_P(PerDomain, JBelowKEstimate) {
  const Domain d = build_catalog(GetParam());
  const auto pairs = sample_pairs(d, 6, Sampler::kBoundaryBiased, 103);
  for (const PointPair& p : pairs) {
    const MetricSample s = k_metric(d, p.x, p.y);
    EXPECT_LE(s.j, s.k_est + s.k_err + 1e-12) << p.x.x << "," << p.x.y << " " << p.y.x << "," << p.y.y;
  }
}

TEST_P(PerDomain, KAtMostTwiceJForClosePoints) {
  const Domain d = build_catalog(GetParam());
  std::mt19937_64 rng(104);
  const KOptions opts;
  for (int i = 0; i < 6; ++i) {
    const Point x = random_point(d, rng);
    const Point y = nearby(d, x, 0.5, rng);
    // Far from the comb the ball can leave the truncation box.
    if (!d.extent().contains(y)) continue;
    const MetricSample s = k_metric(d, x, y, opts);
    EXPECT_LE(s.k_est, 2 * s.j * (1 + opts.rel_tol));
  }
}

TEST_P(PerDomain, JsonRoundTripKeepsJ) {
  const Domain a = build_catalog(GetParam());
  const Domain b = domain_from_json(domain_to_json(a));
  std::mt19937_64 rng(105);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_point(a, rng);
    const Point y = random_point(a, rng);
    EXPECT_EQ(j_metric(a, x, y), j_metric(b, x, y));
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, PerDomain, ::testing::ValuesIn(catalog_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s) {
                             if (c == '-') c = '_';
                           }
                           return s;
                         });

TEST(Monotonicity, DiscInsideShiftedHalfPlane) {
  // D subset of H = {y > -1}, so k_H <= k_D and j_H <= j_D. k_H is known
  // in closed form after shifting H to the upper half-plane.
  const Domain disc = build_disc();
  const Domain half = build_half_plane(HalfPlane{{0, -1}, {0, 1}}, 20.0);
  auto k_half = [](Point a, Point b) {
    const double d2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
    return std::acosh(1 + d2 / (2 * (a.y + 1) * (b.y + 1)));
  };
  const auto pairs = sample_pairs(disc, 12, Sampler::kUniform, 106);
  for (const PointPair& p : pairs) {
    EXPECT_LE(j_metric(half, p.x, p.y), j_metric(disc, p.x, p.y) + 1e-12);
    const MetricSample s = k_metric(disc, p.x, p.y);
    EXPECT_LE(k_half(p.x, p.y), s.k_est + 3 * s.k_err + 1e-12);
  }
}

TEST(Additivity, MidpointSplitOfGeodesic) {
  const Domain d = build_slit_disc();
  std::mt19937_64 rng(107);
  for (int i = 0; i < 5; ++i) {
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const MetricSample xy = k_metric(d, x, y);
    const auto& v = xy.geodesic.vertices();
    if (v.size() < 3) continue;
    const Point z = v[v.size() / 2];
    const MetricSample xz = k_metric(d, x, z);
    const MetricSample zy = k_metric(d, z, y);
    const double budget = 3 * (xy.k_err + xz.k_err + zy.k_err);
    EXPECT_LE(std::abs(xy.k_est - (xz.k_est + zy.k_est)), budget + 1e-9);
  }
}

TEST(CombLayoutProperty, RecurrenceForRandomParameters) {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> u(0.02, 0.95);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (!(a < b && b < c)) continue;
    const CombParams p{a, b, c, 1 + static_cast<int>(rng() % 12)};
    const CombLayout L = comb_layout(p);
    for (int k = 1; k <= p.k_max; ++k) {
      EXPECT_NEAR(L.x[k] - L.x[k - 1], std::pow(a, k) + std::pow(b, k), 1e-15);
    }
    EXPECT_LT(L.tooth_left(p.k_max) + L.tooth_width(p.k_max), L.s);
  }
}

}  // namespace
}  // namespace qhgeo
