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

#include <gtest/gtest.h>

#include <cmath>

#include "qhgeo/domains.h"
#include "qhgeo/error.h"
#include "qhgeo/metrics.h"
#include "qhgeo/sampling.h"

namespace qhgeo {
namespace {

const double kE = std::exp(1.0);

TEST(JMetric, Examples) {
  EXPECT_NEAR(j_metric(build_half_plane(), {0, 1}, {3, 1}), std::log(4.0), 1e-15);
  EXPECT_NEAR(j_metric(build_disc(), {0, 0}, {0.5, 0}), std::log(2.0), 1e-15);
  EXPECT_EQ(j_metric(build_slit_disc(), {0.3, 0.2}, {0.3, 0.2}), 0.0);
  EXPECT_DOUBLE_EQ(distance_ratio(build_disc(), {0, 0}, {0.5, 0}), 1.0);
}

TEST(JMetric, UsesTheSmallerDelta) {
  const Domain d = build_half_plane();
  // delta = 1 and 4, |x - y| = 3.
  EXPECT_NEAR(j_metric(d, {0, 1}, {0, 4}), std::log(4.0), 1e-15);
  EXPECT_EQ(j_metric(d, {0, 1}, {0, 4}), j_metric(d, {0, 4}, {0, 1}));
}

TEST(QhLength, Examples) {
  const Domain d = build_half_plane();
  EXPECT_NEAR(qh_length(d, PolyPath({{0, 1}, {0, kE}})), 1.0, 1e-6);
  EXPECT_NEAR(qh_length(d, PolyPath({{0, 1}, {3, 1}})), 3.0, 1e-9);
  EXPECT_EQ(qh_length(d, PolyPath({{0, 1}})), 0.0);
}

TEST(QhLength, PolygonalPathInPuncturedPlane) {
  // Radial leg then an arc-free chord: the radial part integrates to
  // log(r1/r0) exactly.
  const Domain d = build_punctured_plane();
  EXPECT_NEAR(qh_length(d, PolyPath({{1, 0}, {kE, 0}, {kE * kE, 0}})), 2.0, 1e-9);
}

TEST(QhLength, Errors) {
  const Domain d = build_disc();
  EXPECT_THROW(qh_length(d, PolyPath({{0, 0}, {2, 0}})), Error);
  EXPECT_THROW(qh_length(d, PolyPath()), Error);
  EXPECT_THROW(qh_length(build_slit_disc(), PolyPath({{0.5, 0.1}, {0.5, -0.1}})), Error);
}

TEST(KMetric, HalfPlaneVertical) {
  const MetricSample s = k_metric(build_half_plane(), {0, 1}, {0, kE});
  EXPECT_NEAR(s.k_est, 1.0, 0.02);
  EXPECT_NEAR(s.j, 1.0, 1e-12);
  EXPECT_TRUE(s.converged);
}

TEST(KMetric, PuncturedRadial) {
  const MetricSample s = k_metric(build_punctured_plane(), {1, 0}, {kE, 0});
  EXPECT_NEAR(s.k_est, 1.0, 0.02);
}

TEST(KMetric, SamePoint) {
  const MetricSample s = k_metric(build_disc(), {0.2, 0.1}, {0.2, 0.1});
  EXPECT_EQ(s.k_est, 0.0);
  EXPECT_EQ(s.j, 0.0);
  EXPECT_EQ(s.geodesic.size(), 1u);
}

TEST(KMetric, TinyRatioReturnsJ) {
  const MetricSample s = k_metric(build_disc(), {0.2, 0.1}, {0.2 + 1e-9, 0.1});
  EXPECT_EQ(s.k_est, s.j);
  EXPECT_EQ(s.k_err, 0.0);
}

TEST(KMetric, SampleFieldsAreConsistent) {
  const Domain d = build_slit_disc();
  const MetricSample s = k_metric(d, {0.5, 0.1}, {0.5, -0.1});
  EXPECT_EQ(s.geodesic.front(), (Point{0.5, 0.1}));
  EXPECT_EQ(s.geodesic.back(), (Point{0.5, -0.1}));
  EXPECT_NEAR(qh_length(d, s.geodesic), s.k_est, 1e-9 * s.k_est);
  EXPECT_NEAR(s.ratio, 2.0, 1e-12);
  EXPECT_NEAR(s.j, std::log(3.0), 1e-12);
  EXPECT_GE(s.k_est, s.j);
  EXPECT_GE(s.level, 1);
}

TEST(KMetric, GeodesicStaysInTheTruncation) {
  // Every vertex must be usable as an endpoint of a further query.
  const Domain d = build_comb_complement(CombParams{});
  const auto pairs = sample_pairs(d, 12, Sampler::kBoundaryBiased, 2005);
  for (const PointPair& p : pairs) {
    const MetricSample s = k_metric(d, p.x, p.y);
    for (Point v : s.geodesic.vertices()) EXPECT_TRUE(d.in_clip(v)) << v.x << "," << v.y;
  }
}

TEST(KMetric, OutsidePointsRaise) {
  try {
    k_metric(build_disc(), {0, 0}, {3, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPointNotInterior);
  }
}

TEST(Oracles, Examples) {
  EXPECT_NEAR(k_oracle_halfplane({0, 1}, {3, 1}), std::acosh(5.5), 1e-14);
  EXPECT_NEAR(k_oracle_halfplane({0, 1}, {3, 1}), 2.3895, 1e-4);
  EXPECT_NEAR(k_oracle_punctured({1, 0}, {-1, 0}), kPi, 1e-14);
  EXPECT_NEAR(k_oracle_punctured({1, 0}, {0, 1}), kPi / 2, 1e-14);
  EXPECT_NEAR(k_oracle_punctured({1, 0}, {kE, 0}), 1.0, 1e-14);
  EXPECT_THROW(k_oracle_halfplane({0, 0}, {0, 1}), Error);
  EXPECT_THROW(k_oracle_punctured({0, 0}, {0, 1}), Error);
}

TEST(Oracles, HalfPlaneVerticalIsLogRatio) {
  for (double y : {1.5, 2.0, 10.0}) {
    EXPECT_NEAR(k_oracle_halfplane({0.3, 1}, {0.3, y}), std::log(y), 1e-12);
  }
}

}  // namespace
}  // namespace qhgeo
