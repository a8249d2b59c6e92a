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

#include "qhgeo/qh_integral.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "qhgeo/error.h"

namespace qhgeo {
namespace {

constexpr int kMaxGaussPoints = 16;

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

constexpr int kMaxAdaptDepth = 20;

class SegmentIntegrator {
 public:
  SegmentIntegrator(const Domain& d, const QuadratureOptions& opts)
      : d_(d), opts_(opts), rule_(gauss_legendre(opts.points)) {}

  double run(Point a, Point b) {
    // Fixed orientation keeps the result exactly symmetric in a and b.
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    const double da = delta(a);
    const double db = delta(b);
    return piece(a, b, da, db, std::nullopt, 0, 0);
  }

 private:
  double delta(Point p) const {
    const double dist = d_.distance_to_chain(p);
    if (dist < d_.snap_tolerance()) {
      throw Error(ErrorCode::kPathExitsDomain, "quadrature node touches the boundary");
    }
    return dist;
  }

  double gauss(Point a, Point b) const {
    const Point ab = b - a;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      sum += rule_.weights[i] / delta(a + rule_.nodes[i] * ab);
    }
    return norm(ab) * sum;
  }

  // Error-driven bisection stops at the rounding floor of delta: close to
  // the boundary delta carries absolute noise of a few ulps of the
  // coordinates, which no amount of splitting removes.
  double piece(Point a, Point b, double da, double db, std::optional<double> whole, int depth,
               int adapt) {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    const Point m = midpoint(a, b);
    if (depth < opts_.max_depth && len * opts_.split_ratio > std::min(da, db)) {
      const double dm = delta(m);
      return piece(a, m, da, dm, std::nullopt, depth + 1, adapt) +
             piece(m, b, dm, db, std::nullopt, depth + 1, adapt);
    }
    const double total = whole ? *whole : gauss(a, b);
    if (depth >= opts_.max_depth || adapt >= kMaxAdaptDepth) return total;
    const double left = gauss(a, m);
    const double right = gauss(m, b);
    const double scale = 1.0 + std::max(norm(a), norm(b));
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale / std::min(da, db);
    if (std::abs(left + right - total) <= std::max(opts_.rel_tol, noise) * (left + right)) {
      return left + right;
    }
    const double dm = delta(m);
    return piece(a, m, da, dm, left, depth + 1, adapt + 1) +
           piece(m, b, dm, db, right, depth + 1, adapt + 1);
  }

  const Domain& d_;
  const QuadratureOptions& opts_;
  const GaussRule& rule_;
};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::array<GaussRule, kMaxGaussPoints + 1> rules = [] {
    std::array<GaussRule, kMaxGaussPoints + 1> out;
    for (int k = 1; k <= kMaxGaussPoints; ++k) out[k] = make_rule(k);
    return out;
  }();
  if (n < 1 || n > kMaxGaussPoints) {
    throw Error(ErrorCode::kInvalidParams, "gauss_legendre supports 1..16 points");
  }
  return rules[n];
}

bool segment_inside(const Domain& d, Point a, Point b) {
  if (!d.is_inside(a) || !d.is_inside(b)) return false;
  return segment_inside(d, a, b, d.distance_to_chain(a), d.distance_to_chain(b));
}

bool segment_inside(const Domain& d, Point a, Point b, double da, double db) {
  struct Piece {
    Point a, b;
    double da, db;
    int depth;
  };
  // Depth-first with at most one pending sibling per level.
  std::array<Piece, 64> stack;
  std::size_t top = 0;
  stack[top++] = {a, b, da, db, 0};
  while (top > 0) {
    const Piece p = stack[--top];
    if (p.da + p.db > distance(p.a, p.b)) continue;
    if (p.depth >= 60) return false;
    const Point m = midpoint(p.a, p.b);
    const double dm = d.distance_to_chain(m);
    if (dm < d.snap_tolerance() || !d.in_union(m)) return false;
    stack[top++] = {m, p.b, dm, p.db, p.depth + 1};
    stack[top++] = {p.a, m, p.da, dm, p.depth + 1};
  }
  return true;
}

double segment_qh_length(const Domain& d, Point a, Point b, const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  return SegmentIntegrator(d, opts).run(a, b);
}

double polyline_qh_length(const Domain& d, std::span<const Point> vertices,
                          const QuadratureOptions& opts) {
  for (Point v : vertices) {
    if (!d.is_inside(v)) throw Error(ErrorCode::kPathExitsDomain, "path vertex is not inside");
  }
  double total = 0.0;
  SegmentIntegrator integrator(d, opts);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!segment_inside(d, vertices[i - 1], vertices[i])) {
      throw Error(ErrorCode::kPathExitsDomain, "path segment leaves the domain");
    }
    total += integrator.run(vertices[i - 1], vertices[i]);
  }
  return total;
}

}  // namespace qhgeo
