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

#ifndef QHGEO_SVG_H_
#define QHGEO_SVG_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhgeo/geometry.h"

namespace qhgeo {

/// Standalone SVG of a domain's boundary chain with optional paths and
/// labelled markers, framed on `view` (the domain extent when empty).
class SvgPlot {
 public:
  explicit SvgPlot(const Domain& d, std::optional<Box> view = std::nullopt);

  void add_path(const PolyPath& path, const std::string& color = "#1f77b4");
  void add_marker(Point p, const std::string& label = {}, const std::string& color = "#d62728");

  std::string render(int width_px = 800) const;
  void save(const std::string& path, int width_px = 800) const;

 private:
  struct Marker {
    Point p;
    std::string label;
    std::string color;
  };
  const Domain& domain_;
  Box view_;
  std::vector<std::pair<PolyPath, std::string>> paths_;
  std::vector<Marker> markers_;
};

}  // namespace qhgeo

#endif  // QHGEO_SVG_H_
