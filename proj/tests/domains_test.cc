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

#include "qhgeo/domains.h"
#include "qhgeo/error.h"

namespace qhgeo {
namespace {

const CombParams kPaperComb{0.2, 0.4, 0.7, 8};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kParse;
}

TEST(Catalog, DeltaExamples) {
  EXPECT_DOUBLE_EQ(build_disc().boundary_distance({0, 0}), 1.0);
  EXPECT_NEAR(build_slit_disc().boundary_distance({0.5, 0.3}), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(build_punctured_plane(0.01, 100).boundary_distance({1, 0}), 1.0);
}

TEST(Catalog, EveryNameBuilds) {
  for (const auto& name : catalog_names()) {
    const Domain d = build_catalog(name);
    EXPECT_EQ(d.name(), name);
    EXPECT_FALSE(d.boundary().empty());
  }
  EXPECT_EQ(code_of([] { build_catalog("annulus"); }), ErrorCode::kInvalidParams);
}

TEST(Catalog, InvalidParameters) {
  EXPECT_EQ(code_of([] { build_punctured_plane(1.0, 0.5); }), ErrorCode::kBadTruncation);
  EXPECT_EQ(code_of([] { build_half_plane(0.0); }), ErrorCode::kBadTruncation);
  EXPECT_EQ(code_of([] { build_comb_complement(kPaperComb, 0.0); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { build_comb(CombParams{0.5, 0.4, 0.7, 8}); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { build_comb(CombParams{0.2, 0.4, 0.7, 0}); }),
            ErrorCode::kInvalidParams);
}

TEST(CombLayout, Examples) {
  const CombLayout L = comb_layout(kPaperComb);
  EXPECT_NEAR(L.s, 0.2 / 0.8 + 0.4 / 0.6, 1e-15);
  EXPECT_NEAR(L.s, 0.9166666666666667, 1e-15);
  EXPECT_NEAR(L.tooth_left(2), 0.6, 1e-15);
  EXPECT_NEAR(L.witness(1).x, 0.4, 1e-15);
  EXPECT_NEAR(L.witness(1).y, 0.4, 1e-15);
  EXPECT_NEAR(L.alpha, std::log(0.7) / std::log(0.4), 1e-15);
}

TEST(CombLayout, Recurrence) {
  const CombParams p = kPaperComb;
  const CombLayout L = comb_layout(p);
  ASSERT_EQ(L.x.size(), static_cast<std::size_t>(p.k_max + 1));
  for (int k = 1; k <= p.k_max; ++k) {
    EXPECT_NEAR(L.x[k] - L.x[k - 1], std::pow(p.u, k) + std::pow(p.t, k), 1e-15) << k;
  }
  EXPECT_LT(L.tooth_left(p.k_max) + std::pow(p.u, p.k_max), L.s);
}

TEST(CombLayout, TeethFitForOtherParameters) {
  for (const CombParams p :
       {CombParams{0.1, 0.3, 0.9, 12}, CombParams{0.3, 0.5, 0.6, 5}, CombParams{0.05, 0.1, 0.2, 6}}) {
    const CombLayout L = comb_layout(p);
    EXPECT_LT(L.tooth_left(p.k_max) + L.tooth_width(p.k_max), L.s);
  }
}

TEST(Comb, TeethAndCapsAreInside) {
  const auto [comb, L] = build_comb(kPaperComb);
  for (int k = 1; k <= kPaperComb.k_max; ++k) {
    const double mid = L.tooth_left(k) + 0.5 * L.tooth_width(k);
    EXPECT_TRUE(comb.is_inside({mid, 0.5 * L.tooth_height(k)})) << k;
    // Inside the semi-disc cap above the rectangle.
    EXPECT_TRUE(comb.is_inside({mid, L.tooth_height(k) + 0.4 * L.tooth_width(k)})) << k;
    EXPECT_FALSE(comb.is_inside({mid, L.tooth_height(k) + 0.6 * L.tooth_width(k)})) << k;
    // Gap witness sits outside the comb.
    EXPECT_EQ(comb.classify(L.witness(k)), Location::kOutside) << k;
  }
  EXPECT_TRUE(comb.is_inside({0.5, -1.0}));
}

TEST(CombComplement, Examples) {
  const Domain c = build_comb_complement(kPaperComb);
  EXPECT_EQ(c.classify({0.4, 0.4}), Location::kInside);
  EXPECT_EQ(c.classify({0.1, 0.35}), Location::kOutside);
  // Half the first gap width.
  const double d1 = c.boundary_distance({0.4, 0.4});
  EXPECT_NEAR(d1, 0.2, 1e-12);
  EXPECT_GE(d1, 0.16);
}

TEST(CombComplement, WitnessDeltaIsHalfTheGap) {
  const CombLayout L = comb_layout(kPaperComb);
  const Domain c = build_comb_complement(kPaperComb);
  for (int k = 1; k <= kPaperComb.k_max; ++k) {
    EXPECT_NEAR(c.boundary_distance(L.witness(k)), 0.5 * L.gap_width(k), 1e-12) << k;
    EXPECT_GE(c.boundary_distance(L.witness(k)), std::pow(kPaperComb.t, k + 1)) << k;
  }
}

TEST(CombComplement, PartitionsTheTruncationBox) {
  const Domain comb = build_comb(kPaperComb).first;
  const Domain comp = build_comb_complement(kPaperComb);
  const Box box = comp.truncation()->box;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(box.min.x, box.max.x);
  std::uniform_real_distribution<double> uy(box.min.y, box.max.y);
  for (int i = 0; i < 5000; ++i) {
    const Point p{ux(rng), uy(rng)};
    const Location a = comb.classify(p);
    const Location b = comp.classify(p);
    if (a == Location::kBoundary || b == Location::kBoundary) {
      EXPECT_EQ(a, b);
    } else {
      EXPECT_NE(a == Location::kInside, b == Location::kInside);
    }
  }
}

TEST(PuncturedPlane, DeltaIsDistanceToOrigin) {
  const Domain d = build_punctured_plane();
  EXPECT_DOUBLE_EQ(d.boundary_distance({3, 4}), 5.0);
  EXPECT_EQ(d.classify({0, 0}), Location::kBoundary);
}

TEST(HalfPlane, GeneralOrientation) {
  const Domain d = build_half_plane(HalfPlane{{0, -1}, {0, 2}}, 10.0);
  EXPECT_DOUBLE_EQ(d.boundary_distance({0.5, 0.5}), 1.5);
  EXPECT_EQ(d.classify({0, -2}), Location::kOutside);
}

}  // namespace
}  // namespace qhgeo
