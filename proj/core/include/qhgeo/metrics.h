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

#ifndef QHGEO_METRICS_H_
#define QHGEO_METRICS_H_

#include "qhgeo/geometry.h"

namespace qhgeo {

struct MetricSample {
  Point x;
  Point y;
  double j = 0.0;
  double k_est = 0.0;
  double k_err = 0.0;
  double ratio = 0.0;  // |x - y| / min(delta(x), delta(y))
  PolyPath geodesic;
  bool converged = true;
  int level = 0;
};

/// j(x, y) = log(1 + |x - y| / min(delta(x), delta(y))).
double j_metric(const Domain& d, Point x, Point y);

/// |x - y| / min(delta(x), delta(y)).
double distance_ratio(const Domain& d, Point x, Point y);

/// Quasihyperbolic length of an explicit path, integrated with quad_pts
/// Gauss points per piece. Throws kPathExitsDomain.
double qh_length(const Domain& d, const PolyPath& path, int quad_pts = 5);

struct KOptions {
  double rel_tol = 0.02;
  int max_level = 7;
};

/// Numerical k(x, y) with its geodesic. Pairs with ratio below 1e-6 return
/// k_est = j and the straight segment. k_err is the last successive
/// refinement difference; converged is false when max_level ran out first.
MetricSample k_metric(const Domain& d, Point x, Point y, const KOptions& opts = {});

/// Closed forms: arccosh(1 + |x-y|^2 / (2 x_2 y_2)) in the upper half-plane,
/// and sqrt(theta^2 + log^2(|x|/|y|)) in the plane punctured at the origin.
double k_oracle_halfplane(Point x, Point y);
double k_oracle_punctured(Point x, Point y);

}  // namespace qhgeo

#endif  // QHGEO_METRICS_H_
