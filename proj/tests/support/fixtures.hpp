// Copyright 2026 The radseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "radseg/geometry.hpp"
#include "radseg/scene.hpp"

namespace fixture
{

using Rng = std::mt19937_64;

inline double uni(Rng & rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline radseg::Point3 random_point(Rng & rng, double half)
{
  return {uni(rng, -half, half), uni(rng, -half, half), uni(rng, -half, half)};
}

// Points on the unit sphere around the origin.
inline radseg::Point3 random_direction(Rng & rng)
{
  std::normal_distribution<double> n;
  for (;;) {
    const radseg::Point3 p{n(rng), n(rng), n(rng)};
    const double r = radseg::distance(p, {});
    if (r > 1e-9) {
      return (1.0 / r) * p;
    }
  }
}

// A labeled cloud: instance k owns points [k * per, (k + 1) * per), the rest is background.
inline radseg::PointCloud labeled_cloud(Rng & rng, std::size_t instances, std::size_t per, std::size_t background)
{
  radseg::PointCloud c;
  for (std::size_t k = 0; k < instances; ++k) {
    const radseg::Point3 center = random_point(rng, 3.0);
    for (std::size_t i = 0; i < per; ++i) {
      c.positions.push_back(center + random_point(rng, 0.5));
      c.instance_ids.push_back(static_cast<int>(k));
      c.semantic_ids.push_back(static_cast<int>(k % 2));
    }
  }
  for (std::size_t i = 0; i < background; ++i) {
    c.positions.push_back(random_point(rng, 4.0));
    c.instance_ids.push_back(radseg::kBackgroundLabel);
    c.semantic_ids.push_back(radseg::kBackgroundLabel);
  }
  return c;
}

}  // namespace fixture
