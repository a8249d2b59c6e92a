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

// Planar primitives and the Domain type: a proper subdomain of the plane
// given as a union of simple shapes together with an explicit boundary
// chain. The chain is the single source of truth for the boundary distance
// delta(p); the union only decides on which side of the chain a point lies.

#ifndef QHGEO_GEOMETRY_H_
#define QHGEO_GEOMETRY_H_

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qhgeo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

struct Box {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }
  Point center() const { return midpoint(min, max); }
  bool contains(Point p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool intersects(const Box& o) const {
    return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y && o.min.y <= max.y;
  }
  Box inflated(double margin) const {
    return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
  }
  Box united(const Box& o) const;
  static Box around(Point p) { return {p, p}; }
};

// ---------------------------------------------------------------------------
// Boundary elements.

struct Segment {
  Point a;
  Point b;
};

/// Circular arc covering the polar angles [start, start + sweep] about
/// `center`. `ccw` records the traversal direction of the chain only.
struct Arc {
  Point center;
  double radius = 1.0;
  double start = 0.0;
  double sweep = kTwoPi;
  bool ccw = true;
};

/// An isolated boundary point (the puncture of a punctured plane).
struct Puncture {
  Point at;
};

using BoundaryElement = std::variant<Segment, Arc, Puncture>;

struct ClosestPoint {
  double distance = 0.0;
  Point point;
};

ClosestPoint closest_point(const BoundaryElement& e, Point p);
Point element_midpoint(const BoundaryElement& e);
Box element_bounds(const BoundaryElement& e);
/// Throws kInvalidDomain when the element violates its invariants.
void validate_element(const BoundaryElement& e);

// ---------------------------------------------------------------------------
// Union members. Membership tests are closed; the boundary chain decides
// what is boundary, so seams between members count as interior.

struct Rectangle {
  Point min;
  Point max;
};

struct Disc {
  Point center;
  double radius = 1.0;
};

/// Half of a disc: the points of the disc with (p - center) . direction >= 0.
struct SemiDisc {
  Point center;
  double radius = 1.0;
  Point direction{0.0, 1.0};
};

/// Vertices in counter-clockwise order.
struct ConvexPolygon {
  std::vector<Point> vertices;
};

/// Points with (p - origin) . normal >= 0.
struct HalfPlane {
  Point origin;
  Point normal{0.0, 1.0};
};

struct WholePlane {};

using Primitive = std::variant<Rectangle, Disc, SemiDisc, ConvexPolygon, HalfPlane, WholePlane>;

bool contains(const Primitive& shape, Point p);
bool is_bounded(const Primitive& shape);
/// Only meaningful for bounded primitives.
Box primitive_bounds(const Primitive& shape);

// ---------------------------------------------------------------------------

/// Region used to discretize unbounded (or huge) domains. It never enters
/// the boundary distance.
struct Annulus {
  Point center;
  double r_in = 0.0;
  double r_out = 0.0;
};

struct Truncation {
  Box box;
  std::optional<Annulus> annulus;

  bool contains(Point p) const;
};

enum class Location { kInside, kBoundary, kOutside };

const char* to_string(Location loc);

class Domain {
 public:
  /// `complement` flips the union test: the domain is then the exterior of
  /// the closed union. Unbounded domains must carry a truncation.
  Domain(std::string name, std::vector<Primitive> primitives,
         std::vector<BoundaryElement> boundary,
         std::optional<Truncation> truncation = std::nullopt, bool complement = false);

  const std::string& name() const { return name_; }
  const std::vector<Primitive>& primitives() const { return primitives_; }
  const std::vector<BoundaryElement>& boundary() const { return boundary_; }
  const std::optional<Truncation>& truncation() const { return truncation_; }
  bool complement() const { return complement_; }
  bool bounded() const { return bounded_; }

  /// Bounding box of a bounded domain, otherwise the truncation box.
  const Box& extent() const { return extent_; }
  /// Region sampled by the analyzers; defaults to extent().
  Box sample_region() const { return sample_region_.value_or(extent_); }
  void set_sample_region(const Box& box) { sample_region_ = box; }
  bool has_sample_region() const { return sample_region_.has_value(); }

  /// Points closer than this to the chain classify as Boundary.
  double snap_tolerance() const { return snap_tolerance_; }

  Location classify(Point p) const;
  bool is_inside(Point p) const { return classify(p) == Location::kInside; }

  /// delta_G(p). Throws kPointNotInterior unless p is Inside.
  double boundary_distance(Point p) const;

  /// Distance from any point to the boundary chain, with the closest point.
  ClosestPoint closest_boundary_point(Point p) const;
  double distance_to_chain(Point p) const { return closest_boundary_point(p).distance; }

  /// Closed-union membership with the complement flag applied.
  bool in_union(Point p) const;

  /// Whether p lies in the truncation region (always true without one).
  bool in_clip(Point p) const;

 private:
  std::string name_;
  std::vector<Primitive> primitives_;
  std::vector<BoundaryElement> boundary_;
  std::vector<Box> element_boxes_;
  std::optional<Truncation> truncation_;
  std::optional<Box> sample_region_;
  bool complement_ = false;
  bool bounded_ = true;
  Box extent_;
  double snap_tolerance_ = 0.0;
};

// ---------------------------------------------------------------------------
// Paths.

/// Polygonal path. A single vertex is the degenerate path joining a point to
/// itself; otherwise consecutive vertices are distinct.
class PolyPath {
 public:
  PolyPath() = default;
  explicit PolyPath(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const Point& front() const { return vertices_.front(); }
  const Point& back() const { return vertices_.back(); }
  PolyPath reversed() const;

 private:
  std::vector<Point> vertices_;
};

double path_length(const PolyPath& path);

/// Euclidean lengths of the sub-paths before and after vertex z.
/// Throws kVertexNotOnPath when z is not a vertex.
std::pair<double, double> sub_path_lengths(const PolyPath& path, Point z);

}  // namespace qhgeo

#endif  // QHGEO_GEOMETRY_H_
