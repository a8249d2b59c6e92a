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

#include "qhgeo/svg.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qhgeo/error.h"

namespace qhgeo {

SvgPlot::SvgPlot(const Domain& d, std::optional<Box> view)
    : domain_(d), view_(view.value_or(d.extent())) {}

void SvgPlot::add_path(const PolyPath& path, const std::string& color) {
  paths_.emplace_back(path, color);
}

void SvgPlot::add_marker(Point p, const std::string& label, const std::string& color) {
  markers_.push_back({p, label, color});
}

std::string SvgPlot::render(int width_px) const {
  const Box v = view_.inflated(0.02 * view_.diagonal());
  const double scale = width_px / v.width();
  const int height_px = static_cast<int>(std::ceil(v.height() * scale));
  // SVG y grows downwards.
  auto sx = [&](double x) { return (x - v.min.x) * scale; };
  auto sy = [&](double y) { return (v.max.y - y) * scale; };
  const double stroke = 1.5;

  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
      << height_px << "\" viewBox=\"0 0 " << width_px << ' ' << height_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\">\n";
  for (const auto& e : domain_.boundary()) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      out << "<line x1=\"" << sx(s->a.x) << "\" y1=\"" << sy(s->a.y) << "\" x2=\"" << sx(s->b.x)
          << "\" y2=\"" << sy(s->b.y) << "\"/>\n";
    } else if (const auto* a = std::get_if<Arc>(&e)) {
      if (a->sweep >= kTwoPi) {
        out << "<circle cx=\"" << sx(a->center.x) << "\" cy=\"" << sy(a->center.y) << "\" r=\""
            << a->radius * scale << "\"/>\n";
        continue;
      }
      const Point p0 = a->center + a->radius * Point{std::cos(a->start), std::sin(a->start)};
      const double end = a->start + a->sweep;
      const Point p1 = a->center + a->radius * Point{std::cos(end), std::sin(end)};
      // Counter-clockwise in the plane is sweep-flag 0 once y is flipped.
      out << "<path d=\"M " << sx(p0.x) << ' ' << sy(p0.y) << " A " << a->radius * scale << ' '
          << a->radius * scale << " 0 " << (a->sweep > kPi ? 1 : 0) << " 0 " << sx(p1.x) << ' '
          << sy(p1.y) << "\"/>\n";
    } else {
      const auto& p = std::get<Puncture>(e);
      out << "<circle cx=\"" << sx(p.at.x) << "\" cy=\"" << sy(p.at.y) << "\" r=\"3\" fill=\"black\"/>\n";
    }
  }
  out << "</g>\n";
  for (const auto& [path, color] : paths_) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (Point p : path.vertices()) out << sx(p.x) << ',' << sy(p.y) << ' ';
    out << "\"/>\n";
  }
  for (const Marker& m : markers_) {
    out << "<circle cx=\"" << sx(m.p.x) << "\" cy=\"" << sy(m.p.y) << "\" r=\"2.5\" fill=\""
        << m.color << "\"/>\n";
    if (!m.label.empty()) {
      out << "<text x=\"" << sx(m.p.x) + 4 << "\" y=\"" << sy(m.p.y) - 4
          << "\" font-size=\"11\" font-family=\"sans-serif\">" << m.label << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void SvgPlot::save(const std::string& path, int width_px) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  out << render(width_px);
}

}  // namespace qhgeo
