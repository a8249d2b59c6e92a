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

#include "qhgeo/mobius.h"

#include <array>
#include <cmath>
#include <optional>

#include "qhgeo/domains.h"
#include "qhgeo/error.h"

namespace qhgeo {
namespace {

struct Circle {
  Point center;
  double radius;
};

// Circle through three points, or nullopt when they are collinear.
std::optional<Circle> circumcircle(Point a, Point b, Point c) {
  const double d = 2.0 * cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), norm(c - b)});
  if (std::abs(d) <= 1e-12 * scale * scale) return std::nullopt;
  const double ab = dot(b - a, b - a);
  const double ac = dot(c - a, c - a);
  const Point ba = b - a;
  const Point ca = c - a;
  const Point o{(ca.y * ab - ba.y * ac) / d, (ba.x * ac - ca.x * ab) / d};
  return Circle{a + o, norm(o)};
}

// Three distinct boundary points of a disc or half-plane, plus an interior one.
std::array<Point, 4> probe_points(const Primitive& shape) {
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    const Point c = disc->center;
    const double r = disc->radius;
    return {Point{c.x + r, c.y}, Point{c.x - 0.6 * r, c.y + 0.8 * r},
            Point{c.x - 0.6 * r, c.y - 0.8 * r}, c};
  }
  const auto& hp = std::get<HalfPlane>(shape);
  const Point n = (1.0 / norm(hp.normal)) * hp.normal;
  const Point t{-n.y, n.x};
  return {hp.origin - t, hp.origin, hp.origin + t, hp.origin + n};
}

}  // namespace

Mobius::Mobius(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const Complex det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-14 * scale * scale)) {
    throw Error(ErrorCode::kSingularMap, "Mobius map has ad - bc = 0");
  }
}

Complex Mobius::apply(Complex z) const {
  const Complex den = c_ * z + d_;
  if (den == Complex(0.0, 0.0)) throw Error(ErrorCode::kSingularMap, "point maps to infinity");
  return (a_ * z + b_) / den;
}

bool Mobius::is_pole(Point p) const { return c_ * to_complex(p) + d_ == Complex(0.0, 0.0); }

Domain image_domain(const Mobius& f, const Domain& d, double half_width) {
  if (d.primitives().size() != 1 || d.boundary().size() != 1 || d.complement() ||
      !(std::holds_alternative<Disc>(d.primitives()[0]) ||
        std::holds_alternative<HalfPlane>(d.primitives()[0]))) {
    throw Error(ErrorCode::kUnsupported, "image domains need a single disc or half-plane");
  }
  auto probes = probe_points(d.primitives()[0]);
  // Keep the probes away from the pole so the image circle is well defined.
  for (int i = 0; i < 3; ++i) {
    if (f.is_pole(probes[i])) {
      probes[i] = midpoint(probes[i], probes[(i + 1) % 3]);
      if (const auto* disc = std::get_if<Disc>(&d.primitives()[0])) {
        const Point r = probes[i] - disc->center;
        probes[i] = disc->center + (disc->radius / norm(r)) * r;
      }
    }
  }
  if (f.is_pole(probes[3])) throw Error(ErrorCode::kUnsupported, "interior point maps to infinity");
  const Point a = f.apply(probes[0]);
  const Point b = f.apply(probes[1]);
  const Point c = f.apply(probes[2]);
  const Point inside = f.apply(probes[3]);

  if (auto circle = circumcircle(a, b, c)) {
    if (distance(inside, circle->center) >= circle->radius) {
      throw Error(ErrorCode::kUnsupported, "image is the exterior of a disc");
    }
    return build_disc(circle->center, circle->radius);
  }
  // Image boundary is the line through a and c.
  const Point dir = c - a;
  const Point t = (1.0 / norm(dir)) * dir;
  Point n{-t.y, t.x};
  if (dot(inside - a, n) < 0.0) n = -1.0 * n;
  const Point foot = dot(a, n) * n;  // nearest point of the line to the origin
  return build_half_plane(HalfPlane{foot, n}, half_width);
}

}  // namespace qhgeo
