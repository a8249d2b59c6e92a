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

#include "qhgeo/domain_io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qhgeo/domains.h"
#include "qhgeo/error.h"

namespace qhgeo {
namespace {

using nlohmann::json;

json to_json(Point p) { return json::array({p.x, p.y}); }

json to_json(const Box& b) { return {{"min", to_json(b.min)}, {"max", to_json(b.max)}}; }

Point point_of(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "expected [x, y]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Box box_of(const json& j) { return {point_of(j.at("min")), point_of(j.at("max"))}; }

json primitive_json(const Primitive& shape) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
          return {{"type", "rectangle"}, {"min", to_json(s.min)}, {"max", to_json(s.max)}};
        } else if constexpr (std::is_same_v<T, Disc>) {
          return {{"type", "disc"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, SemiDisc>) {
          return {{"type", "semi_disc"},
                  {"center", to_json(s.center)},
                  {"radius", s.radius},
                  {"direction", to_json(s.direction)}};
        } else if constexpr (std::is_same_v<T, ConvexPolygon>) {
          json v = json::array();
          for (Point p : s.vertices) v.push_back(to_json(p));
          return {{"type", "convex_polygon"}, {"vertices", v}};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return {{"type", "half_plane"}, {"origin", to_json(s.origin)}, {"normal", to_json(s.normal)}};
        } else {
          return {{"type", "plane"}};
        }
      },
      shape);
}

Primitive primitive_of(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "rectangle") return Rectangle{point_of(j.at("min")), point_of(j.at("max"))};
  if (type == "disc") return Disc{point_of(j.at("center")), j.at("radius").get<double>()};
  if (type == "semi_disc") {
    return SemiDisc{point_of(j.at("center")), j.at("radius").get<double>(),
                    point_of(j.at("direction"))};
  }
  if (type == "convex_polygon") {
    ConvexPolygon poly;
    for (const auto& v : j.at("vertices")) poly.vertices.push_back(point_of(v));
    return poly;
  }
  if (type == "half_plane") return HalfPlane{point_of(j.at("origin")), point_of(j.at("normal"))};
  if (type == "plane") return WholePlane{};
  throw Error(ErrorCode::kParse, "unknown primitive type '" + type + "'");
}

json element_json(const BoundaryElement& e) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return {{"type", "segment"}, {"a", to_json(s.a)}, {"b", to_json(s.b)}};
        } else if constexpr (std::is_same_v<T, Arc>) {
          return {{"type", "arc"},   {"center", to_json(s.center)}, {"radius", s.radius},
                  {"start", s.start}, {"sweep", s.sweep},            {"ccw", s.ccw}};
        } else {
          return {{"type", "point"}, {"at", to_json(s.at)}};
        }
      },
      e);
}

BoundaryElement element_of(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "segment") return Segment{point_of(j.at("a")), point_of(j.at("b"))};
  if (type == "arc") {
    return Arc{point_of(j.at("center")), j.at("radius").get<double>(),
               j.value("start", 0.0), j.value("sweep", kTwoPi), j.value("ccw", true)};
  }
  if (type == "point") return Puncture{point_of(j.at("at"))};
  throw Error(ErrorCode::kParse, "unknown boundary element type '" + type + "'");
}

std::vector<BoundaryElement> polygon_chain(const std::vector<Point>& v) {
  std::vector<BoundaryElement> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Segment{v[i], v[(i + 1) % v.size()]});
  return out;
}

// Boundary of a lone primitive. Half-planes get a segment long enough to
// cover the truncation box.
std::vector<BoundaryElement> derived_boundary(const Primitive& shape,
                                              const std::optional<Truncation>& trunc) {
  if (const auto* r = std::get_if<Rectangle>(&shape)) {
    return polygon_chain({r->min, {r->max.x, r->min.y}, r->max, {r->min.x, r->max.y}});
  }
  if (const auto* c = std::get_if<Disc>(&shape)) {
    return {Arc{c->center, c->radius, 0.0, kTwoPi, true}};
  }
  if (const auto* s = std::get_if<SemiDisc>(&shape)) {
    const Point n = (1.0 / norm(s->direction)) * s->direction;
    const Point t{n.y, -n.x};
    const double start = std::atan2(t.y, t.x);
    return {Segment{s->center - s->radius * t, s->center + s->radius * t},
            Arc{s->center, s->radius, start, kPi, true}};
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&shape)) return polygon_chain(p->vertices);
  if (const auto* h = std::get_if<HalfPlane>(&shape)) {
    if (!trunc) throw Error(ErrorCode::kBadTruncation, "half-plane needs a truncation box");
    const Point n = (1.0 / norm(h->normal)) * h->normal;
    const Point t{-n.y, n.x};
    const Box& b = trunc->box;
    const double reach = distance(h->origin, b.center()) + 0.5 * b.diagonal();
    return {Segment{h->origin - reach * t, h->origin + reach * t}};
  }
  throw Error(ErrorCode::kParse, "boundary must be given for this domain");
}

}  // namespace

Domain domain_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  try {
    const std::string name = j.value("name", std::string("custom"));
    std::vector<Primitive> prims;
    for (const auto& p : j.at("primitives")) prims.push_back(primitive_of(p));
    const bool complement = j.value("complement", false);
    std::optional<Truncation> trunc;
    if (j.contains("truncation")) {
      const json& t = j.at("truncation");
      Truncation tr{box_of(t.at("box")), std::nullopt};
      if (t.contains("annulus")) {
        const json& a = t.at("annulus");
        tr.annulus = Annulus{point_of(a.at("center")), a.at("r_in").get<double>(),
                             a.at("r_out").get<double>()};
      }
      trunc = tr;
    }
    std::vector<BoundaryElement> chain;
    if (j.contains("boundary")) {
      for (const auto& e : j.at("boundary")) chain.push_back(element_of(e));
    } else if (prims.size() == 1 && !complement) {
      chain = derived_boundary(prims.front(), trunc);
    } else {
      throw Error(ErrorCode::kParse, "boundary must be given for this domain");
    }
    Domain d(name, std::move(prims), std::move(chain), trunc, complement);
    if (j.contains("sample_region")) d.set_sample_region(box_of(j.at("sample_region")));
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string domain_to_json(const Domain& d) {
  json j;
  j["name"] = d.name();
  j["primitives"] = json::array();
  for (const auto& p : d.primitives()) j["primitives"].push_back(primitive_json(p));
  j["complement"] = d.complement();
  j["boundary"] = json::array();
  for (const auto& e : d.boundary()) j["boundary"].push_back(element_json(e));
  if (const auto& t = d.truncation()) {
    json tj{{"box", to_json(t->box)}};
    if (t->annulus) {
      tj["annulus"] = {{"center", to_json(t->annulus->center)},
                       {"r_in", t->annulus->r_in},
                       {"r_out", t->annulus->r_out}};
    }
    j["truncation"] = tj;
  }
  if (d.has_sample_region()) j["sample_region"] = to_json(d.sample_region());
  return j.dump(2);
}

Domain load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return domain_from_json(buf.str());
}

void save_domain(const Domain& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  out << domain_to_json(d) << '\n';
}

Domain resolve_domain(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return load_domain(spec);
  return build_catalog(spec);
}

}  // namespace qhgeo
