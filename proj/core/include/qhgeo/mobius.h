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

#ifndef QHGEO_MOBIUS_H_
#define QHGEO_MOBIUS_H_

#include <complex>

#include "qhgeo/geometry.h"

namespace qhgeo {

using Complex = std::complex<double>;

inline Complex to_complex(Point p) { return {p.x, p.y}; }
inline Point to_point(Complex z) { return {z.real(), z.imag()}; }

/// z -> (a z + b) / (c z + d). Throws kSingularMap when ad - bc = 0.
class Mobius {
 public:
  Mobius(Complex a, Complex b, Complex c, Complex d);

  static Mobius identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// i(1 + z)/(1 - z): unit disc onto the upper half-plane.
  static Mobius cayley() { return {Complex(0, 1), Complex(0, 1), -1.0, 1.0}; }

  Complex apply(Complex z) const;
  Point apply(Point p) const { return to_point(apply(to_complex(p))); }
  Mobius inverse() const { return {d_, -b_, -c_, a_}; }
  /// Whether p is sent to infinity.
  bool is_pole(Point p) const;

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

 private:
  Complex a_, b_, c_, d_;
};

/// Image of a domain bounded by a single circle or line (one Disc or
/// HalfPlane primitive, no complement). Circles map to discs or half-planes
/// depending on where the pole sits; half-planes images are truncated to the
/// square of half-size `half_width` about the image boundary point nearest
/// the origin. Throws kUnsupported for any other shape, including images
/// that are the exterior of a disc.
Domain image_domain(const Mobius& f, const Domain& d, double half_width = 20.0);

}  // namespace qhgeo

#endif  // QHGEO_MOBIUS_H_
