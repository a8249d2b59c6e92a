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

// Integrals of the density 1/delta along straight segments, plus the exact
// segment containment test they rely on.

#ifndef QHGEO_QH_INTEGRAL_H_
#define QHGEO_QH_INTEGRAL_H_

#include <span>
#include <vector>

#include "qhgeo/geometry.h"

namespace qhgeo {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule with n points (1 <= n <= 16) mapped to [0, 1].
const GaussRule& gauss_legendre(int n);

struct QuadratureOptions {
  int points = 5;
  /// Pieces are split until their length is at most delta/split_ratio at
  /// both ends.
  double split_ratio = 4.0;
  double rel_tol = 1e-11;
  int max_depth = 48;
};

/// Whether the closed segment [a, b] lies in the domain. Exact: covered by
/// the open balls B(p, delta(p)) of Inside sample points, bisecting where two
/// balls fail to overlap.
bool segment_inside(const Domain& d, Point a, Point b);

/// Same test for endpoints already known to be Inside at chain distances
/// da and db.
bool segment_inside(const Domain& d, Point a, Point b, double da, double db);

/// Quasihyperbolic length of [a, b]. Both endpoints must be Inside; throws
/// kPathExitsDomain when a quadrature node leaves the domain.
double segment_qh_length(const Domain& d, Point a, Point b, const QuadratureOptions& opts = {});

/// Sum of segment_qh_length over consecutive vertices, with the containment
/// check. Throws kPathExitsDomain when a vertex or segment leaves the domain.
double polyline_qh_length(const Domain& d, std::span<const Point> vertices,
                          const QuadratureOptions& opts = {});

}  // namespace qhgeo

#endif  // QHGEO_QH_INTEGRAL_H_
