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

#ifndef QHGEO_DOMAINS_H_
#define QHGEO_DOMAINS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhgeo/geometry.h"

namespace qhgeo {

/// Parameters of the comb: a base rectangle (0,s) x (-2,0) carrying teeth of
/// width u^k and height v^k separated by gaps of width t^k, each capped by a
/// semi-disc. Requires 0 < u < t < v < 1.
struct CombParams {
  double u = 0.2;
  double t = 0.4;
  double v = 0.7;
  int k_max = 8;
};

/// Derived comb quantities; tooth indices are 1-based in the accessors.
struct CombLayout {
  CombParams params;
  std::vector<double> x;  // x_1 .. x_{k_max+1}; the last is where tooth k_max+1 would start
  double s = 0.0;         // base width u/(1-u) + t/(1-t)
  double alpha = 0.0;     // t^alpha = v
  std::vector<Point> z;   // gap witnesses z_1 .. z_{k_max}

  double tooth_left(int k) const { return x.at(k - 1); }
  double tooth_width(int k) const;
  double tooth_height(int k) const;
  double gap_width(int k) const;
  Point witness(int k) const { return z.at(k - 1); }
};

void validate(const CombParams& p);
CombLayout comb_layout(const CombParams& p);

Domain build_disc(Point center = {0.0, 0.0}, double radius = 1.0);

/// Upper half-plane, truncated to [-w, w] x [0, w] for discretization.
Domain build_half_plane(double half_width = 20.0);

/// General half-plane {(p - origin) . normal > 0}; truncated to the square of
/// half-size `half_width` about `origin`.
Domain build_half_plane(const HalfPlane& plane, double half_width);

/// Plane minus the origin, discretized over r_in < |p| < r_out.
/// Throws kBadTruncation unless 0 < r_in < r_out.
Domain build_punctured_plane(double r_in = 0.01, double r_out = 100.0);

/// Unit disc minus the slit [0, 1) x {0}; the slit is boundary from both sides.
Domain build_slit_disc();

std::pair<Domain, CombLayout> build_comb(const CombParams& p);

/// Exterior of the closed comb, truncated to its bounding box inflated by
/// `margin`. Throws kInvalidParams unless margin > 0.
Domain build_comb_complement(const CombParams& p, double margin = 1.0);

/// Catalog lookup by name with default parameters: disc, half-plane,
/// punctured-plane, slit-disc, comb, comb-complement.
Domain build_catalog(std::string_view name);
const std::vector<std::string>& catalog_names();

}  // namespace qhgeo

#endif  // QHGEO_DOMAINS_H_
