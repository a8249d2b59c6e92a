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

#include "qhgeo/sampling.h"

#include <charconv>
#include <cstdlib>
#include <string>

#include "qhgeo/error.h"

namespace qhgeo {
namespace {

constexpr int kMaxRejections = 100000;

}  // namespace

Sampler parse_sampler(std::string_view name) {
  if (name == "uniform") return Sampler::kUniform;
  if (name == "boundary-biased") return Sampler::kBoundaryBiased;
  throw Error(ErrorCode::kInvalidParams, "unknown sampler '" + std::string(name) + "'");
}

const char* to_string(Sampler s) {
  return s == Sampler::kUniform ? "uniform" : "boundary-biased";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QHGEO_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view text(env);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec == std::errc() && end == text.data() + text.size()) return seed;
  }
  return 42;
}

Point sample_uniform(const Domain& d, std::mt19937_64& rng) {
  const Box box = d.sample_region();
  std::uniform_real_distribution<double> ux(box.min.x, box.max.x);
  std::uniform_real_distribution<double> uy(box.min.y, box.max.y);
  for (int i = 0; i < kMaxRejections; ++i) {
    const Point p{ux(rng), uy(rng)};
    if (d.in_clip(p) && d.is_inside(p)) return p;
  }
  throw Error(ErrorCode::kInvalidDomain, "sample region holds no interior point");
}

Point sample_near_boundary(const Domain& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < kMaxRejections; ++i) {
    const Point p = sample_uniform(d, rng);
    const double u = unit(rng);
    const double beta = u * u;  // Beta(0.5, 1) by inversion
    const ClosestPoint cp = d.closest_boundary_point(p);
    const Point q = cp.point + beta * (p - cp.point);
    if (d.in_clip(q) && d.is_inside(q)) return q;
  }
  throw Error(ErrorCode::kInvalidDomain, "could not place a point near the boundary");
}

std::vector<PointPair> sample_pairs(const Domain& d, int n, Sampler sampler, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::kInvalidParams, "sample count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<PointPair> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Point x = sample_uniform(d, rng);
    const Point y =
        sampler == Sampler::kUniform ? sample_uniform(d, rng) : sample_near_boundary(d, rng);
    out.push_back({x, y});
  }
  return out;
}

}  // namespace qhgeo
