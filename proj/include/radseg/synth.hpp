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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "radseg/scene.hpp"

namespace radseg
{

enum class ShapeFamily {
  kEllipsoid,   // points on a randomly rotated ellipsoid surface
  kStarConvex,  // points on the surface of a random positive radial function
  kLShape,      // points filling an L-shaped prism; its centroid lies outside the solid
};

std::string to_string(ShapeFamily family);
ShapeFamily shape_family_from_string(const std::string & name);

struct SceneSpec
{
  std::uint64_t seed = 0;
  std::size_t instance_count = 3;
  std::size_t points_per_instance = 400;
  std::size_t background_points = 1000;
  std::vector<ShapeFamily> shapes{ShapeFamily::kEllipsoid, ShapeFamily::kStarConvex};  // cycled over instances
  double extent = 6.0;        // side of the scene cube centered at the origin, meters
  double noise_sigma = 0.0;   // gaussian jitter of instance points, meters
  double min_size = 0.4;      // bounding radius range of instances, meters
  double max_size = 0.8;
  int class_count = 3;
  bool with_color = false;

  void validate() const;
};

/// Deterministic for a fixed spec. Instances get ids 0..n-1 in generation order; background
/// points never fall inside an instance's solid.
Scene generate_scene(const SceneSpec & spec);

}  // namespace radseg
