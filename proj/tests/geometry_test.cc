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
#include <random>
#include <vector>

#include "qhgeo/domains.h"
#include "qhgeo/error.h"
#include "qhgeo/geometry.h"

namespace qhgeo {
namespace {

TEST(Classify, UnitDisc) {
  const Domain d = build_disc();
  EXPECT_EQ(d.classify({0, 0}), Location::kInside);
  EXPECT_EQ(d.classify({1, 0}), Location::kBoundary);
  EXPECT_EQ(d.classify({2, 0}), Location::kOutside);
}

TEST(Classify, SnapToleranceMakesNearBoundaryPointsBoundary) {
  const Domain d = build_disc();
  const double eps = d.snap_tolerance();
  EXPECT_GT(eps, 0.0);
  EXPECT_EQ(d.classify({1.0 - 0.5 * eps, 0}), Location::kBoundary);
  EXPECT_EQ(d.classify({1.0 - 10 * eps, 0}), Location::kInside);
}

TEST(Classify, SlitIsBoundaryFromBothSides) {
  const Domain d = build_slit_disc();
  EXPECT_EQ(d.classify({0.5, 0.0}), Location::kBoundary);
  EXPECT_EQ(d.classify({-0.5, 0.0}), Location::kInside);
  EXPECT_NEAR(d.boundary_distance({0.5, 1e-3}), 1e-3, 1e-15);
  EXPECT_NEAR(d.boundary_distance({0.5, -1e-3}), 1e-3, 1e-15);
}

TEST(BoundaryDistance, Examples) {
  EXPECT_DOUBLE_EQ(build_disc().boundary_distance({0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(build_half_plane().boundary_distance({3, 0.25}), 0.25);
  const Domain comb = build_comb(CombParams{0.2, 0.4, 0.7, 8}).first;
  EXPECT_NEAR(comb.boundary_distance({0.1, 0.35}), 0.1, 1e-12);
}

TEST(BoundaryDistance, ThrowsOutsideTheDomain) {
  const Domain d = build_disc();
  try {
    d.boundary_distance({2, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPointNotInterior);
  }
  EXPECT_THROW(d.boundary_distance({1, 0}), Error);
}

TEST(PathLength, Examples) {
  EXPECT_DOUBLE_EQ(path_length(PolyPath({{0, 0}, {3, 4}})), 5.0);
  EXPECT_DOUBLE_EQ(path_length(PolyPath({{0, 0}, {1, 0}, {1, 1}})), 2.0);
  EXPECT_DOUBLE_EQ(path_length(PolyPath({{0, 0}, {0, 0.5}, {0, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(path_length(PolyPath({{0.3, 0.3}})), 0.0);
}

TEST(PathLength, AdditiveUnderVertexInsertion) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> s(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const Point c{u(rng), u(rng)};
    const Point m = a + s(rng) * (b - a);
    const double before = path_length(PolyPath({a, b, c}));
    const double after = path_length(PolyPath({a, m, b, c}));
    EXPECT_NEAR(before, after, 1e-12 * (1 + before));
  }
}

TEST(SubPathLengths, Examples) {
  const PolyPath line({{0, 0}, {1, 0}, {2, 0}});
  EXPECT_EQ(sub_path_lengths(line, {1, 0}), std::make_pair(1.0, 1.0));
  EXPECT_EQ(sub_path_lengths(line, {0, 0}), std::make_pair(0.0, 2.0));
  const PolyPath stair({{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  EXPECT_EQ(sub_path_lengths(stair, {1, 1}), std::make_pair(2.0, 1.0));
}

TEST(SubPathLengths, RejectsPointsThatAreNotVertices) {
  const PolyPath line({{0, 0}, {1, 0}, {2, 0}});
  try {
    sub_path_lengths(line, {0.5, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVertexNotOnPath);
  }
}

// Brute-force distance transform: distance from a pixel center to the
// nearest pixel center that does not classify Inside. Only the point
// classifier enters, never the boundary chain distance.
class RasterOracle {
 public:
  RasterOracle(const Domain& d, const std::vector<Point>& extra_boundary) {
    const Box ext = d.extent();
    pitch_ = ext.diagonal() / 256.0;
    const Box box = ext.inflated(4 * pitch_);
    const int nx = static_cast<int>(std::ceil(box.width() / pitch_));
    const int ny = static_cast<int>(std::ceil(box.height() / pitch_));
    for (int i = 0; i <= nx; ++i) {
      for (int j = 0; j <= ny; ++j) {
        const Point p{box.min.x + i * pitch_, box.min.y + j * pitch_};
        (d.is_inside(p) ? inside_ : blocked_).push_back(p);
      }
    }
    for (Point p : extra_boundary) blocked_.push_back(p);
  }

  double pitch() const { return pitch_; }
  const std::vector<Point>& inside() const { return inside_; }

  double distance_at(Point p) const {
    double best = INFINITY;
    for (Point q : blocked_) best = std::min(best, distance(p, q));
    return best;
  }

 private:
  double pitch_ = 0.0;
  std::vector<Point> inside_;
  std::vector<Point> blocked_;
};

class RasterAgreement : public ::testing::TestWithParam<std::string> {};

TEST_P(RasterAgreement, BoundaryDistanceWithinTwoPixels) {
  const Domain d = build_catalog(GetParam());
  // Zero-area boundary (the puncture, the slit) holds no pixel center, so
  // it is added as explicit samples.
  std::vector<Point> extra;
  if (GetParam() == "punctured-plane") extra.push_back({0, 0});
  if (GetParam() == "slit-disc") {
    for (int i = 0; i <= 4096; ++i) extra.push_back({i / 4096.0, 0.0});
  }
  // Comb teeth past the second are thinner than a pixel; sample their sides.
  if (GetParam() == "comb" || GetParam() == "comb-complement") {
    const double u = 0.2, t = 0.4, v = 0.7;
    double left = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double w = std::pow(u, k), h = std::pow(v, k);
      for (int i = 0; i <= 2048; ++i) {
        const double y = h * i / 2048.0;
        extra.push_back({left, y});
        extra.push_back({left + w, y});
      }
      extra.push_back({left + 0.5 * w, h + 0.5 * w});
      left += w + std::pow(t, k);
    }
  }
  const RasterOracle oracle(d, extra);
  ASSERT_GT(oracle.inside().size(), 100u);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, oracle.inside().size() - 1);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Point p = oracle.inside()[pick(rng)];
    if (!d.extent().contains(p)) continue;
    const double truth = oracle.distance_at(p);
    EXPECT_NEAR(d.boundary_distance(p), truth, 2 * oracle.pitch()) << "at (" << p.x << ", " << p.y << ")";
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

INSTANTIATE_TEST_SUITE_P(Catalog, RasterAgreement, ::testing::ValuesIn(catalog_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s) {
                             if (c == '-') c = '_';
                           }
                           return s;
                         });

TEST(OpenBall, PointsCloserThanDeltaAreInside) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (const std::string& name : catalog_names()) {
    const Domain d = build_catalog(name);
    const Box box = d.sample_region();
    int tested = 0;
    while (tested < 200) {
      const Point p{box.min.x + unit(rng) * box.width(), box.min.y + unit(rng) * box.height()};
      if (!d.is_inside(p)) continue;
      const double delta = d.boundary_distance(p);
      const double angle = kTwoPi * unit(rng);
      // Stay clear of the snap band at the rim of the ball.
      const double r = unit(rng) * (delta - 2 * d.snap_tolerance());
      const Point q = p + Point{r * std::cos(angle), r * std::sin(angle)};
      EXPECT_EQ(d.classify(q), Location::kInside) << name;
      ++tested;
    }
  }
}

TEST(Domain, RejectsUnboundedWithoutTruncation) {
  EXPECT_THROW(Domain("hp", {HalfPlane{}}, {Segment{{-1, 0}, {1, 0}}}), Error);
}

TEST(Box, Helpers) {
  const Box b{{0, 0}, {3, 4}};
  EXPECT_DOUBLE_EQ(b.diagonal(), 5.0);
  EXPECT_TRUE(b.contains({3, 4}));
  EXPECT_FALSE(b.contains({3.1, 4}));
  EXPECT_TRUE(b.intersects(Box{{3, 4}, {5, 5}}));
  const Box u = b.united(Box{{-1, 2}, {1, 6}});
  EXPECT_EQ(u.min, (Point{-1, 0}));
  EXPECT_EQ(u.max, (Point{3, 6}));
}

}  // namespace
}  // namespace qhgeo
