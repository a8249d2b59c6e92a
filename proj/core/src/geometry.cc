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

#include "qhgeo/geometry.h"

#include <algorithm>
#include <limits>

#include "qhgeo/error.h"

namespace qhgeo {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

ClosestPoint closest_on_segment(const Segment& s, Point p) {
  const Point ab = s.b - s.a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - s.a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point q = s.a + t * ab;
  return {distance(p, q), q};
}

Point arc_point(const Arc& a, double angle) {
  return {a.center.x + a.radius * std::cos(angle), a.center.y + a.radius * std::sin(angle)};
}

// Offset of `angle` past the arc start, in [0, 2pi).
double angle_offset(const Arc& a, double angle) {
  double off = std::fmod(angle - a.start, kTwoPi);
  if (off < 0.0) off += kTwoPi;
  return off;
}

ClosestPoint closest_on_arc(const Arc& a, Point p) {
  const Point rel = p - a.center;
  const double rho = norm(rel);
  if (rho == 0.0) return {a.radius, arc_point(a, a.start)};
  const double angle = std::atan2(rel.y, rel.x);
  if (a.sweep >= kTwoPi || angle_offset(a, angle) <= a.sweep) {
    const Point q = a.center + (a.radius / rho) * rel;
    return {std::abs(rho - a.radius), q};
  }
  const Point e0 = arc_point(a, a.start);
  const Point e1 = arc_point(a, a.start + a.sweep);
  const double d0 = distance(p, e0);
  const double d1 = distance(p, e1);
  return d0 <= d1 ? ClosestPoint{d0, e0} : ClosestPoint{d1, e1};
}

}  // namespace

Box Box::united(const Box& o) const {
  return {{std::min(min.x, o.min.x), std::min(min.y, o.min.y)},
          {std::max(max.x, o.max.x), std::max(max.y, o.max.y)}};
}

ClosestPoint closest_point(const BoundaryElement& e, Point p) {
  return std::visit(Overloaded{
                        [&](const Segment& s) { return closest_on_segment(s, p); },
                        [&](const Arc& a) { return closest_on_arc(a, p); },
                        [&](const Puncture& q) { return ClosestPoint{distance(p, q.at), q.at}; },
                    },
                    e);
}

Point element_midpoint(const BoundaryElement& e) {
  return std::visit(Overloaded{
                        [](const Segment& s) { return midpoint(s.a, s.b); },
                        [](const Arc& a) { return arc_point(a, a.start + 0.5 * a.sweep); },
                        [](const Puncture& q) { return q.at; },
                    },
                    e);
}

Box element_bounds(const BoundaryElement& e) {
  return std::visit(
      Overloaded{
          [](const Segment& s) { return Box::around(s.a).united(Box::around(s.b)); },
          [](const Arc& a) {
            Box box = Box::around(arc_point(a, a.start)).united(
                Box::around(arc_point(a, a.start + a.sweep)));
            // Axis extremes that fall inside the sweep.
            for (int q = 0; q < 4; ++q) {
              const double angle = q * 0.5 * kPi;
              if (a.sweep >= kTwoPi || angle_offset(a, angle) <= a.sweep) {
                box = box.united(Box::around(arc_point(a, angle)));
              }
            }
            return box;
          },
          [](const Puncture& q) { return Box::around(q.at); },
      },
      e);
}

void validate_element(const BoundaryElement& e) {
  std::visit(Overloaded{
                 [](const Segment& s) {
                   if (!finite(s.a) || !finite(s.b) || s.a == s.b) {
                     throw Error(ErrorCode::kInvalidDomain, "segment endpoints must be distinct");
                   }
                 },
                 [](const Arc& a) {
                   if (!finite(a.center) || !(a.radius > 0.0) || !std::isfinite(a.start) ||
                       !(a.sweep > 0.0) || a.sweep > kTwoPi + 1e-12) {
                     throw Error(ErrorCode::kInvalidDomain,
                                 "arc needs radius > 0 and sweep in (0, 2pi]");
                   }
                 },
                 [](const Puncture& q) {
                   if (!finite(q.at)) throw Error(ErrorCode::kInvalidDomain, "non-finite puncture");
                 },
             },
             e);
}

bool contains(const Primitive& shape, Point p) {
  return std::visit(
      Overloaded{
          [&](const Rectangle& r) { return Box{r.min, r.max}.contains(p); },
          [&](const Disc& d) { return distance(p, d.center) <= d.radius; },
          [&](const SemiDisc& s) {
            return distance(p, s.center) <= s.radius && dot(p - s.center, s.direction) >= 0.0;
          },
          [&](const ConvexPolygon& poly) {
            const auto& v = poly.vertices;
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (cross(v[(i + 1) % v.size()] - v[i], p - v[i]) < 0.0) return false;
            }
            return !v.empty();
          },
          [&](const HalfPlane& h) { return dot(p - h.origin, h.normal) >= 0.0; },
          [](const WholePlane&) { return true; },
      },
      shape);
}

bool is_bounded(const Primitive& shape) {
  return !std::holds_alternative<HalfPlane>(shape) && !std::holds_alternative<WholePlane>(shape);
}

Box primitive_bounds(const Primitive& shape) {
  return std::visit(
      Overloaded{
          [](const Rectangle& r) { return Box{r.min, r.max}; },
          [](const Disc& d) {
            return Box{{d.center.x - d.radius, d.center.y - d.radius},
                       {d.center.x + d.radius, d.center.y + d.radius}};
          },
          [](const SemiDisc& s) {
            return Box{{s.center.x - s.radius, s.center.y - s.radius},
                       {s.center.x + s.radius, s.center.y + s.radius}};
          },
          [](const ConvexPolygon& poly) {
            Box box = Box::around(poly.vertices.front());
            for (Point v : poly.vertices) box = box.united(Box::around(v));
            return box;
          },
          [](const HalfPlane&) { return Box{}; },
          [](const WholePlane&) { return Box{}; },
      },
      shape);
}

bool Truncation::contains(Point p) const {
  if (!box.contains(p)) return false;
  if (annulus) {
    const double r = distance(p, annulus->center);
    if (r < annulus->r_in || r > annulus->r_out) return false;
  }
  return true;
}

const char* to_string(Location loc) {
  switch (loc) {
    case Location::kInside: return "Inside";
    case Location::kBoundary: return "Boundary";
    case Location::kOutside: return "Outside";
  }
  return "?";
}

Domain::Domain(std::string name, std::vector<Primitive> primitives,
               std::vector<BoundaryElement> boundary, std::optional<Truncation> truncation,
               bool complement)
    : name_(std::move(name)),
      primitives_(std::move(primitives)),
      boundary_(std::move(boundary)),
      truncation_(std::move(truncation)),
      complement_(complement) {
  if (primitives_.empty()) throw Error(ErrorCode::kInvalidDomain, "domain has no primitives");
  if (boundary_.empty()) {
    throw Error(ErrorCode::kInvalidDomain, "a proper subdomain needs a nonempty boundary");
  }
  for (const auto& e : boundary_) {
    validate_element(e);
    element_boxes_.push_back(element_bounds(e));
  }
  for (const auto& p : primitives_) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&p); poly && poly->vertices.size() < 3) {
      throw Error(ErrorCode::kInvalidDomain, "convex polygon needs at least 3 vertices");
    }
    if (const auto* h = std::get_if<HalfPlane>(&p); h && norm(h->normal) == 0.0) {
      throw Error(ErrorCode::kInvalidDomain, "half-plane normal must be nonzero");
    }
  }

  bounded_ = !complement_ && std::all_of(primitives_.begin(), primitives_.end(),
                                         [](const Primitive& p) { return is_bounded(p); });
  if (truncation_) {
    const Box& b = truncation_->box;
    if (!(b.width() > 0.0) || !(b.height() > 0.0)) {
      throw Error(ErrorCode::kBadTruncation, "truncation box must have positive extent");
    }
    if (const auto& ann = truncation_->annulus;
        ann && !(ann->r_in >= 0.0 && ann->r_in < ann->r_out)) {
      throw Error(ErrorCode::kBadTruncation, "annulus needs 0 <= r_in < r_out");
    }
    extent_ = b;
  } else if (!bounded_) {
    throw Error(ErrorCode::kBadTruncation, "unbounded domain '" + name_ + "' needs a truncation");
  } else {
    extent_ = primitive_bounds(primitives_.front());
    for (const auto& p : primitives_) extent_ = extent_.united(primitive_bounds(p));
    for (const auto& e : boundary_) extent_ = extent_.united(element_bounds(e));
  }
  snap_tolerance_ = 1e-9 * extent_.diagonal();
}

ClosestPoint Domain::closest_boundary_point(Point p) const {
  ClosestPoint best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < boundary_.size(); ++i) {
    // Skip elements whose bounding box is already farther than the best.
    const Box& b = element_boxes_[i];
    const double gx = std::max({b.min.x - p.x, 0.0, p.x - b.max.x});
    const double gy = std::max({b.min.y - p.y, 0.0, p.y - b.max.y});
    if (gx * gx + gy * gy >= best.distance * best.distance) continue;
    const ClosestPoint c = closest_point(boundary_[i], p);
    if (c.distance < best.distance) best = c;
  }
  return best;
}

bool Domain::in_union(Point p) const {
  const bool any = std::any_of(primitives_.begin(), primitives_.end(),
                               [&](const Primitive& s) { return contains(s, p); });
  return complement_ ? !any : any;
}

bool Domain::in_clip(Point p) const { return !truncation_ || truncation_->contains(p); }

Location Domain::classify(Point p) const {
  if (distance_to_chain(p) < snap_tolerance_) return Location::kBoundary;
  return in_union(p) ? Location::kInside : Location::kOutside;
}

double Domain::boundary_distance(Point p) const {
  const double d = distance_to_chain(p);
  if (d < snap_tolerance_ || !in_union(p)) {
    throw Error(ErrorCode::kPointNotInterior, "point (" + std::to_string(p.x) + ", " +
                                                  std::to_string(p.y) + ") is not inside " +
                                                  name_);
  }
  return d;
}

PolyPath::PolyPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::kInvalidParams, "path needs a vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!finite(vertices_[i])) throw Error(ErrorCode::kInvalidParams, "non-finite path vertex");
    if (i > 0 && vertices_[i] == vertices_[i - 1]) {
      throw Error(ErrorCode::kInvalidParams, "consecutive path vertices coincide");
    }
  }
}

PolyPath PolyPath::reversed() const {
  PolyPath out;
  out.vertices_.assign(vertices_.rbegin(), vertices_.rend());
  return out;
}

double path_length(const PolyPath& path) {
  const auto& v = path.vertices();
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) total += distance(v[i - 1], v[i]);
  return total;
}

std::pair<double, double> sub_path_lengths(const PolyPath& path, Point z) {
  const auto& v = path.vertices();
  double before = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) before += distance(v[i - 1], v[i]);
    if (v[i] == z) {
      double after = 0.0;
      for (std::size_t j = i + 1; j < v.size(); ++j) after += distance(v[j - 1], v[j]);
      return {before, after};
    }
  }
  throw Error(ErrorCode::kVertexNotOnPath, "point is not a vertex of the path");
}

}  // namespace qhgeo
