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

#include <algorithm>
#include <array>
#include <cmath>

#include "qhgeo/domains.h"
#include "qhgeo/error.h"
#include "qhgeo/metrics.h"
#include "qhgeo/qh_integral.h"
#include "qhgeo/qhgrid.h"
#include "qhgeo/sampling.h"

namespace qhgeo {
namespace {

const double kE = std::exp(1.0);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kParse;
}

// Closed forms, written out here rather than taken from the library.
double halfplane_k(Point a, Point b) {
  const double d2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  return std::acosh(1.0 + d2 / (2.0 * a.y * b.y));
}

TEST(BuildGrid, HalfPlaneNodesAreInside) {
  const Domain d = build_half_plane(5.0);
  const QhGrid g = build_grid(d, 0.5);
  ASSERT_GT(g.nodes().size(), 0u);
  for (const GridNode& n : g.nodes()) {
    ASSERT_GT(n.delta, 0.0);
    EXPECT_EQ(n.delta, d.boundary_distance(n.p));
    EXPECT_TRUE(d.truncation()->box.contains(n.p));
  }
}

TEST(BuildGrid, EdgeWeightsBoundedBelow) {
  const Domain d = build_disc();
  const QhGrid g = build_grid(d, 0.25);
  ASSERT_GT(g.edge_count(), 0u);
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    for (const GridEdge& e : g.neighbors(static_cast<int>(i))) {
      const GridNode& a = g.nodes()[i];
      const GridNode& b = g.nodes()[e.to];
      EXPECT_GE(e.weight, distance(a.p, b.p) / std::max(a.delta, b.delta) * (1 - 1e-12));
      EXPECT_GT(e.weight, 0.0);
    }
  }
}

TEST(BuildGrid, EightStencilDegree) {
  const QhGrid g = build_grid(build_disc(), 0.25, Stencil::k8);
  std::size_t max_degree = 0;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    max_degree = std::max(max_degree, g.neighbors(static_cast<int>(i)).size());
  }
  EXPECT_EQ(max_degree, 8u);
  const QhGrid g16 = build_grid(build_disc(), 0.25, Stencil::k16);
  max_degree = 0;
  for (std::size_t i = 0; i < g16.nodes().size(); ++i) {
    max_degree = std::max(max_degree, g16.neighbors(static_cast<int>(i)).size());
  }
  EXPECT_EQ(max_degree, 16u);
}

TEST(BuildGrid, EdgesAreUndirected) {
  const QhGrid g = build_grid(build_slit_disc(), 0.25);
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    for (const GridEdge& e : g.neighbors(static_cast<int>(i))) {
      const auto back = g.neighbors(e.to);
      const auto it = std::find_if(back.begin(), back.end(),
                                   [&](const GridEdge& r) { return r.to == static_cast<int>(i); });
      ASSERT_NE(it, back.end());
      EXPECT_EQ(it->weight, e.weight);
    }
  }
}

TEST(BuildGrid, EveryCombToothHoldsANode) {
  const auto [comb, L] = build_comb(CombParams{0.2, 0.4, 0.7, 4});
  const QhGrid g = build_grid(comb, 0.02);
  for (int k = 1; k <= 4; ++k) {
    const double left = L.tooth_left(k);
    const double right = left + L.tooth_width(k);
    const bool found = std::any_of(g.nodes().begin(), g.nodes().end(), [&](const GridNode& n) {
      return n.p.x > left && n.p.x < right && n.p.y > 0.0 && n.p.y < L.tooth_height(k);
    });
    EXPECT_TRUE(found) << "tooth " << k;
  }
}

TEST(BuildGrid, Errors) {
  EXPECT_EQ(code_of([] { build_grid(build_disc(), 0.0); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { build_grid(build_disc(), -1.0); }), ErrorCode::kInvalidParams);
}

TEST(Inject, EndpointsGiveAPath) {
  const Domain d = build_disc();
  QhGrid g = build_grid(d, 0.25);
  const std::array<Point, 2> pts{Point{0.13, -0.41}, Point{-0.52, 0.37}};
  g.inject(pts);
  const GridPath p = shortest_path(g, pts[0], pts[1]);
  EXPECT_EQ(p.path.front(), pts[0]);
  EXPECT_EQ(p.path.back(), pts[1]);
  EXPECT_GT(p.length, 0.0);
}

TEST(Inject, Idempotent) {
  const Domain d = build_disc();
  QhGrid g = build_grid(d, 0.25);
  const std::array<Point, 1> q{Point{0.31, 0.17}};
  const auto first = g.inject(q);
  const std::size_t nodes = g.nodes().size();
  const std::size_t edges = g.edge_count();
  const auto second = g.inject(q);
  EXPECT_EQ(first, second);
  EXPECT_EQ(g.nodes().size(), nodes);
  EXPECT_EQ(g.edge_count(), edges);

  // A lattice node is reused as is.
  const std::array<Point, 1> lattice{g.nodes()[0].p};
  EXPECT_EQ(g.inject(lattice).front(), 0);
  EXPECT_EQ(g.nodes().size(), nodes);
}

TEST(Inject, ValueForm) {
  const std::array<Point, 1> q{Point{0.2, 0.2}};
  const QhGrid g = inject_points(build_grid(build_disc(), 0.5), q);
  EXPECT_TRUE(g.find_node(q[0]).has_value());
  EXPECT_TRUE(g.nodes()[*g.find_node(q[0])].injected);
}

TEST(Inject, NearSlitConnectsOnlyOnItsSide) {
  const Domain d = build_slit_disc();
  const double pitch = 0.25;
  QhGrid g = build_grid(d, pitch);
  const Point p{0.5, pitch / 10};
  ASSERT_NEAR(d.boundary_distance(p), pitch / 10, 1e-15);
  const int id = g.inject(std::span<const Point>(&p, 1)).front();
  ASSERT_FALSE(g.neighbors(id).empty());
  for (const GridEdge& e : g.neighbors(id)) {
    const Point q = g.nodes()[e.to].p;
    if (q.y < 0.0) {
      // The segment crosses y = 0; it must do so left of the slit.
      const double s = p.y / (p.y - q.y);
      EXPECT_LT(p.x + s * (q.x - p.x), 0.0);
    }
    EXPECT_TRUE(segment_inside(d, p, q));
  }
}

TEST(Inject, Errors) {
  QhGrid g = build_grid(build_disc(), 0.25);
  const std::array<Point, 1> outside{Point{1.5, 0}};
  EXPECT_EQ(code_of([&] { g.inject(outside); }), ErrorCode::kPointNotInterior);
  EXPECT_EQ(code_of([&] { shortest_path(g, {0.123, 0.456}, {0, 0}); }),
            ErrorCode::kPointNotInterior);
}

TEST(ShortestPath, SamePointIsDegenerate) {
  QhGrid g = build_grid(build_disc(), 0.25);
  const Point x{0.1, 0.2};
  g.inject(std::span<const Point>(&x, 1));
  const GridPath p = shortest_path(g, x, x);
  EXPECT_EQ(p.length, 0.0);
  EXPECT_EQ(p.path.size(), 1u);
}

TEST(ShortestPath, Symmetric) {
  const Domain d = build_slit_disc();
  QhGrid g = build_grid(d, 0.125);
  const std::array<Point, 2> pts{Point{0.5, 0.1}, Point{0.5, -0.1}};
  g.inject(pts);
  const GridPath a = shortest_path(g, pts[0], pts[1]);
  const GridPath b = shortest_path(g, pts[1], pts[0]);
  EXPECT_EQ(a.length, b.length);
  EXPECT_EQ(a.graph_weight, b.graph_weight);
  EXPECT_EQ(a.path.vertices(), b.path.reversed().vertices());
}

TEST(ShortestPath, LengthIsAccurateQuadratureOfPath) {
  const Domain d = build_half_plane(8.0);
  QhGrid g = build_grid(d, 0.25);
  const std::array<Point, 2> pts{Point{0, 1}, Point{3, 1}};
  g.inject(pts);
  const GridPath p = shortest_path(g, pts[0], pts[1]);
  for (Point v : p.path.vertices()) EXPECT_TRUE(d.is_inside(v));
  EXPECT_NEAR(qh_length(d, p.path), p.length, 1e-9 * p.length);
  EXPECT_GE(p.length, halfplane_k(pts[0], pts[1]) * (1 - 1e-9));
}

TEST(ShortestPath, HalfPlaneVerticalConverges) {
  const Domain d = build_half_plane(8.0);
  const std::array<Point, 2> pts{Point{0, 1}, Point{0, kE}};
  double last = INFINITY;
  for (double pitch : {0.5, 0.25, 0.125}) {
    QhGrid g = build_grid(d, pitch);
    g.inject(pts);
    const double len = shortest_path(g, pts[0], pts[1]).length;
    EXPECT_GE(len, 1.0 - 1e-9);
    EXPECT_LE(len, last + 1e-12);
    last = len;
  }
  EXPECT_NEAR(last, 1.0, 0.02);
}

TEST(ShortestPath, PuncturedPlaneHalfTurn) {
  const Domain d = build_punctured_plane(0.05, 3.0);
  QhGrid g = build_grid(d, 0.125);
  const std::array<Point, 2> pts{Point{1, 0}, Point{-1, 0}};
  g.inject(pts);
  const double len = shortest_path(g, pts[0], pts[1]).length;
  EXPECT_GE(len, kPi * (1 - 1e-9));
  EXPECT_NEAR(len, kPi, 0.03 * kPi);
}

TEST(ShortestPath, DisconnectedComponents) {
  const Domain two("two-discs", {Disc{{-2, 0}, 1}, Disc{{2, 0}, 1}},
                   {Arc{{-2, 0}, 1, 0, kTwoPi, true}, Arc{{2, 0}, 1, 0, kTwoPi, true}});
  QhGrid g = build_grid(two, 0.25);
  const std::array<Point, 2> pts{Point{-2, 0.1}, Point{2, 0.1}};
  g.inject(pts);
  EXPECT_EQ(code_of([&] { shortest_path(g, pts[0], pts[1]); }), ErrorCode::kDisconnected);
}

TEST(RelaxPath, StraightensTowardTheGeodesic) {
  const Domain d = build_half_plane(8.0);
  const PolyPath straight({{0, 1}, {3, 1}});
  const double before = qh_length(d, straight);
  const PolyPath relaxed = relax_path(d, straight);
  EXPECT_EQ(relaxed.front(), straight.front());
  EXPECT_EQ(relaxed.back(), straight.back());
  for (Point v : relaxed.vertices()) EXPECT_TRUE(d.is_inside(v));
  const double after = qh_length(d, relaxed);
  const double oracle = halfplane_k({0, 1}, {3, 1});
  EXPECT_LT(after, before);
  EXPECT_GE(after, oracle * (1 - 1e-9));
  EXPECT_NEAR(after, oracle, 0.01 * oracle);
}

TEST(RelaxPath, Errors) {
  const Domain d = build_disc();
  EXPECT_EQ(code_of([&] { relax_path(d, PolyPath({{0, 0}, {2, 0}})); }),
            ErrorCode::kPathExitsDomain);
  RelaxOptions bad;
  bad.spacing = 0.0;
  EXPECT_EQ(code_of([&] { relax_path(d, PolyPath({{0, 0}, {0.5, 0}}), bad); }),
            ErrorCode::kInvalidParams);
}

TEST(RefineUntil, HalfPlaneHorizontal) {
  const Domain d = build_half_plane();
  const RefineResult r = refine_until(d, {0, 1}, {3, 1});
  const double oracle = std::acosh(5.5);
  EXPECT_NEAR(oracle, 2.3895, 1e-4);
  EXPECT_NEAR(r.estimate, oracle, 0.02 * oracle);
  EXPECT_TRUE(r.converged);
}

TEST(RefineUntil, PuncturedQuarterTurn) {
  const Domain d = build_punctured_plane();
  const RefineResult r = refine_until(d, {1, 0}, {0, 1});
  EXPECT_NEAR(r.estimate, kPi / 2, 0.02 * kPi / 2);
}

TEST(RefineUntil, SamePoint) {
  const RefineResult r = refine_until(build_disc(), {0.3, 0.3}, {0.3, 0.3});
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.err_est, 0.0);
  EXPECT_EQ(r.level, 0);
}

TEST(RefineUntil, MonotoneAndValid) {
  const Domain slit = build_slit_disc();
  const Domain comb = build_comb(CombParams{0.2, 0.4, 0.7, 8}).first;
  const std::array<std::pair<const Domain*, PointPair>, 4> cases{{
      {&slit, {{0.5, 0.2}, {0.5, -0.2}}},
      {&slit, {{-0.3, 0.6}, {0.8, 0.1}}},
      {&comb, {{0.1, 0.5}, {0.62, 0.3}}},
      {&comb, {{0.1, 0.6}, {0.8, -1.0}}},
  }};
  RefineOptions opts;
  opts.rel_tol = 0.005;  // run a few levels
  opts.max_level = 4;
  for (const auto& [d, pq] : cases) {
    const RefineResult r = refine_until(*d, pq.x, pq.y, opts);
    ASSERT_FALSE(r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      EXPECT_LE(r.history[i].best, r.history[i - 1].best + 1e-12);
    }
    EXPECT_EQ(r.estimate, r.history.back().best);
    for (Point v : r.path.vertices()) EXPECT_TRUE(d->is_inside(v));
    EXPECT_NEAR(qh_length(*d, r.path), r.estimate, 1e-9 * r.estimate);
    const RefineResult back = refine_until(*d, pq.y, pq.x, opts);
    EXPECT_NEAR(back.estimate, r.estimate, 1e-9 * r.estimate);
  }
}

TEST(RefineUntil, Errors) {
  const Domain d = build_disc();
  RefineOptions bad;
  bad.rel_tol = 0.0;
  EXPECT_EQ(code_of([&] { refine_until(d, {0, 0}, {0.5, 0}, bad); }), ErrorCode::kInvalidParams);
  bad = {};
  bad.max_level = 0;
  EXPECT_EQ(code_of([&] { refine_until(d, {0, 0}, {0.5, 0}, bad); }), ErrorCode::kInvalidParams);
}

}  // namespace
}  // namespace qhgeo
