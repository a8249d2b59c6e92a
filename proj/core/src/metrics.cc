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

#include "qhgeo/metrics.h"

#include <algorithm>
#include <cmath>

#include "qhgeo/error.h"
#include "qhgeo/qh_integral.h"
#include "qhgeo/qhgrid.h"

namespace qhgeo {

double distance_ratio(const Domain& d, Point x, Point y) {
  const double m = std::min(d.boundary_distance(x), d.boundary_distance(y));
  return distance(x, y) / m;
}

double j_metric(const Domain& d, Point x, Point y) {
  return std::log1p(distance_ratio(d, x, y));
}

double qh_length(const Domain& d, const PolyPath& path, int quad_pts) {
  if (path.empty()) throw Error(ErrorCode::kInvalidParams, "empty path");
  QuadratureOptions opts;
  opts.points = quad_pts;
  return polyline_qh_length(d, path.vertices(), opts);
}

MetricSample k_metric(const Domain& d, Point x, Point y, const KOptions& opts) {
  MetricSample s;
  s.x = x;
  s.y = y;
  s.ratio = distance_ratio(d, x, y);
  s.j = std::log1p(s.ratio);
  if (s.ratio < 1e-6) {
    s.k_est = s.j;
    s.geodesic = x == y ? PolyPath({x}) : PolyPath({x, y});
    return s;
  }
  RefineOptions ro;
  ro.rel_tol = opts.rel_tol;
  ro.max_level = opts.max_level;
  RefineResult r = refine_until(d, x, y, ro);
  s.k_est = r.estimate;
  s.k_err = r.err_est;
  s.geodesic = std::move(r.path);
  s.converged = r.converged;
  s.level = r.level;
  return s;
}

double k_oracle_halfplane(Point x, Point y) {
  if (!(x.y > 0.0 && y.y > 0.0)) {
    throw Error(ErrorCode::kPointNotInterior, "point is not in the upper half-plane");
  }
  const Point dxy = x - y;
  return std::acosh(1.0 + dot(dxy, dxy) / (2.0 * x.y * y.y));
}

double k_oracle_punctured(Point x, Point y) {
  const double rx = norm(x);
  const double ry = norm(y);
  if (rx == 0.0 || ry == 0.0) throw Error(ErrorCode::kPointNotInterior, "point is the puncture");
  const double theta = std::abs(std::atan2(cross(x, y), dot(x, y)));
  const double l = std::log(rx / ry);
  return std::sqrt(theta * theta + l * l);
}

}  // namespace qhgeo
