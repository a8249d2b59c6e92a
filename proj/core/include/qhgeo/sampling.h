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

#ifndef QHGEO_SAMPLING_H_
#define QHGEO_SAMPLING_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qhgeo/geometry.h"

namespace qhgeo {

enum class Sampler { kUniform, kBoundaryBiased };

Sampler parse_sampler(std::string_view name);
const char* to_string(Sampler s);

struct PointPair {
  Point x;
  Point y;
};

/// 42 unless the QHGEO_SEED environment variable holds an integer.
std::uint64_t default_seed();

/// Uniform Inside point of the domain's sample region, by rejection.
/// Throws kInvalidDomain when the region seems to hold no Inside point.
Point sample_uniform(const Domain& d, std::mt19937_64& rng);

/// Point at distance beta * delta(p) from the boundary on the segment from
/// the nearest boundary point of a uniform p, with beta ~ Beta(0.5, 1).
Point sample_near_boundary(const Domain& d, std::mt19937_64& rng);

/// Pairs drawn in a fixed order from one seeded stream. With kBoundaryBiased
/// the first point is uniform and the second comes from
/// sample_near_boundary.
std::vector<PointPair> sample_pairs(const Domain& d, int n, Sampler sampler, std::uint64_t seed);

}  // namespace qhgeo

#endif  // QHGEO_SAMPLING_H_
