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

// JSON form of a Domain:
//
//   {"name": "...",
//    "primitives": [{"type": "rectangle", "min": [x, y], "max": [x, y]},
//                   {"type": "disc", "center": [x, y], "radius": r},
//                   {"type": "semi_disc", "center": ..., "radius": ..., "direction": [x, y]},
//                   {"type": "convex_polygon", "vertices": [[x, y], ...]},
//                   {"type": "half_plane", "origin": [x, y], "normal": [x, y]},
//                   {"type": "plane"}],
//    "complement": false,
//    "boundary": [{"type": "segment", "a": [x, y], "b": [x, y]},
//                 {"type": "arc", "center": ..., "radius": ..., "start": s, "sweep": w, "ccw": true},
//                 {"type": "point", "at": [x, y]}],
//    "truncation": {"box": {"min": ..., "max": ...},
//                   "annulus": {"center": ..., "r_in": a, "r_out": b}},
//    "sample_region": {"min": ..., "max": ...}}
//
// "boundary" may be omitted for a single non-complemented primitive other
// than the plane; it is then derived from the primitive.

#ifndef QHGEO_DOMAIN_IO_H_
#define QHGEO_DOMAIN_IO_H_

#include <string>
#include <string_view>

#include "qhgeo/geometry.h"

namespace qhgeo {

/// Throws kParse for malformed JSON and the Domain errors for bad shapes.
Domain domain_from_json(std::string_view text);
std::string domain_to_json(const Domain& d);

Domain load_domain(const std::string& path);
void save_domain(const Domain& d, const std::string& path);

/// A JSON file when `spec` names an existing file, otherwise a catalog name.
Domain resolve_domain(const std::string& spec);

}  // namespace qhgeo

#endif  // QHGEO_DOMAIN_IO_H_
