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

#include "qhgeo/domains.h"

#include <cmath>

#include "qhgeo/error.h"

namespace qhgeo {
namespace {

constexpr double kBaseDepth = 2.0;

struct CombShape {
  std::vector<Primitive> primitives;
  std::vector<BoundaryElement> boundary;
};

// The chain runs counter-clockwise around the comb: along the bottom and up
// the right side of the base, then leftwards over every tooth, and finally
// down the shared left edge of tooth 1 and the base.
CombShape comb_shape(const CombLayout& layout) {
  const CombParams& p = layout.params;
  const double s = layout.s;
  CombShape shape;
  shape.primitives.push_back(Rectangle{{0.0, -kBaseDepth}, {s, 0.0}});
  for (int k = 1; k <= p.k_max; ++k) {
    const double left = layout.tooth_left(k);
    const double w = layout.tooth_width(k);
    const double h = layout.tooth_height(k);
    shape.primitives.push_back(Rectangle{{left, 0.0}, {left + w, h}});
    shape.primitives.push_back(SemiDisc{{left + 0.5 * w, h}, 0.5 * w, {0.0, 1.0}});
  }

  auto& chain = shape.boundary;
  chain.push_back(Segment{{0.0, -kBaseDepth}, {s, -kBaseDepth}});
  chain.push_back(Segment{{s, -kBaseDepth}, {s, 0.0}});
  double cursor = s;
  for (int k = p.k_max; k >= 1; --k) {
    const double left = layout.tooth_left(k);
    const double w = layout.tooth_width(k);
    const double h = layout.tooth_height(k);
    chain.push_back(Segment{{cursor, 0.0}, {left + w, 0.0}});
    chain.push_back(Segment{{left + w, 0.0}, {left + w, h}});
    chain.push_back(Arc{{left + 0.5 * w, h}, 0.5 * w, 0.0, kPi, true});
    if (k > 1) chain.push_back(Segment{{left, h}, {left, 0.0}});
    cursor = left;
  }
  chain.push_back(Segment{{0.0, layout.tooth_height(1)}, {0.0, -kBaseDepth}});
  return shape;
}

}  // namespace

double CombLayout::tooth_width(int k) const { return std::pow(params.u, k); }
double CombLayout::tooth_height(int k) const { return std::pow(params.v, k); }
double CombLayout::gap_width(int k) const { return std::pow(params.t, k); }

void validate(const CombParams& p) {
  if (!(0.0 < p.u && p.u < p.t && p.t < p.v && p.v < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "comb needs 0 < u < t < v < 1");
  }
  if (p.k_max < 1) throw Error(ErrorCode::kInvalidParams, "comb needs k_max >= 1");
}

CombLayout comb_layout(const CombParams& p) {
  validate(p);
  CombLayout layout;
  layout.params = p;
  layout.s = p.u / (1.0 - p.u) + p.t / (1.0 - p.t);
  layout.alpha = std::log(p.v) / std::log(p.t);
  layout.x.reserve(p.k_max + 1);
  layout.x.push_back(0.0);
  for (int k = 1; k <= p.k_max; ++k) {
    layout.x.push_back(layout.x.back() + std::pow(p.u, k) + std::pow(p.t, k));
  }
  for (int k = 1; k <= p.k_max; ++k) {
    const double tk = std::pow(p.t, k);
    layout.z.push_back({layout.x[k] - 0.5 * tk, tk});
  }
  return layout;
}

Domain build_disc(Point center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidParams, "disc radius must be positive");
  return Domain("disc", {Disc{center, radius}}, {Arc{center, radius, 0.0, kTwoPi, true}});
}

Domain build_half_plane(double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorCode::kBadTruncation, "half width must be positive");
  const double w = half_width;
  Domain d("half-plane", {HalfPlane{{0.0, 0.0}, {0.0, 1.0}}}, {Segment{{-w, 0.0}, {w, 0.0}}},
           Truncation{{{-w, 0.0}, {w, w}}, std::nullopt});
  d.set_sample_region({{-2.0, 0.0}, {2.0, 2.0}});
  return d;
}

Domain build_half_plane(const HalfPlane& plane, double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorCode::kBadTruncation, "half width must be positive");
  const double len = norm(plane.normal);
  if (len == 0.0) throw Error(ErrorCode::kInvalidParams, "half-plane normal must be nonzero");
  const Point n = (1.0 / len) * plane.normal;
  const Point tangent{-n.y, n.x};
  // Long enough to cover the projection of the whole truncation square.
  const double reach = half_width * std::sqrt(2.0);
  const Point o = plane.origin;
  Domain d("half-plane", {HalfPlane{o, n}}, {Segment{o - reach * tangent, o + reach * tangent}},
           Truncation{Box::around(o).inflated(half_width), std::nullopt});
  d.set_sample_region(Box::around(o + n).inflated(1.0));
  return d;
}

Domain build_punctured_plane(double r_in, double r_out) {
  if (!(r_in > 0.0 && r_in < r_out && std::isfinite(r_out))) {
    throw Error(ErrorCode::kBadTruncation, "punctured plane needs 0 < r_in < r_out");
  }
  Domain d("punctured-plane", {WholePlane{}}, {Puncture{{0.0, 0.0}}},
           Truncation{{{-r_out, -r_out}, {r_out, r_out}}, Annulus{{0.0, 0.0}, r_in, r_out}});
  d.set_sample_region({{-3.0, -3.0}, {3.0, 3.0}});
  return d;
}

Domain build_slit_disc() {
  return Domain("slit-disc", {Disc{{0.0, 0.0}, 1.0}},
                {Arc{{0.0, 0.0}, 1.0, 0.0, kTwoPi, true}, Segment{{0.0, 0.0}, {1.0, 0.0}}});
}

std::pair<Domain, CombLayout> build_comb(const CombParams& p) {
  CombLayout layout = comb_layout(p);
  CombShape shape = comb_shape(layout);
  return {Domain("comb", std::move(shape.primitives), std::move(shape.boundary)),
          std::move(layout)};
}

Domain build_comb_complement(const CombParams& p, double margin) {
  if (!(margin > 0.0)) throw Error(ErrorCode::kInvalidParams, "margin must be positive");
  const CombLayout layout = comb_layout(p);
  CombShape shape = comb_shape(layout);
  Box bounds{{0.0, -kBaseDepth}, {layout.s, layout.tooth_height(1) + 0.5 * layout.tooth_width(1)}};
  return Domain("comb-complement", std::move(shape.primitives), std::move(shape.boundary),
                Truncation{bounds.inflated(margin), std::nullopt}, /*complement=*/true);
}

Domain build_catalog(std::string_view name) {
  if (name == "disc") return build_disc();
  if (name == "half-plane") return build_half_plane();
  if (name == "punctured-plane") return build_punctured_plane();
  if (name == "slit-disc") return build_slit_disc();
  if (name == "comb") return build_comb(CombParams{}).first;
  if (name == "comb-complement") return build_comb_complement(CombParams{});
  throw Error(ErrorCode::kInvalidParams, "unknown catalog domain '" + std::string(name) + "'");
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"disc",      "half-plane", "punctured-plane",
                                              "slit-disc", "comb",       "comb-complement"};
  return names;
}

}  // namespace qhgeo
