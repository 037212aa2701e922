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
#include <vector>

#include "radseg/geometry.hpp"
#include "radseg/scene.hpp"

namespace radseg
{

/// Smallest ray length; sectors without any instance point get this value.
inline constexpr double kMinRay = 1e-5;

/// An instance hypothesis: a center plus one ray length per angular sector.
struct RadialPolygon
{
  Point3 center;
  std::vector<double> rays;
  SectorGrid grid;

  /// Throws InvalidInput unless rays.size() matches the grid and every ray is >= kMinRay.
  void validate() const;
};

struct Aabb
{
  Point3 min;
  Point3 max;
};

/// Mean of the instance's points. Throws InvalidInput for an empty instance.
Point3 compute_center_target(const PointCloud & cloud, const GroundTruthInstance & gt);

/// Per-sector distance from `center` to the farthest instance point; kMinRay for empty sectors.
RadialPolygon compute_ray_targets(const PointCloud & cloud, const GroundTruthInstance & gt, const Point3 & center,
                                  const SectorGrid & grid);

/// Exact target polygon: center target plus ray targets around it.
RadialPolygon exact_target(const PointCloud & cloud, const GroundTruthInstance & gt, const SectorGrid & grid);

/// True iff the point's distance to the center is at most the ray of its sector.
bool contains(const RadialPolygon & poly, const Point3 & p);

Aabb aabb_of(const PointCloud & cloud, const GroundTruthInstance & gt);
bool aabb_contains(const Aabb & box, const Point3 & p);

/// Enclosed-point comparison of one instance's exact radial polygon against its AABB.
struct TightnessEntry
{
  int instance_id = 0;
  int class_id = 0;
  std::size_t instance_points = 0;
  std::size_t radial_enclosed_other = 0;  // non-instance points inside the radial polygon
  std::size_t aabb_enclosed_other = 0;    // non-instance points inside the AABB
  double radial_recall = 0.0;
  double aabb_recall = 0.0;

  double radial_precision() const;
  double aabb_precision() const;
};

std::vector<TightnessEntry> tightness_report(const PointCloud & cloud, const std::vector<GroundTruthInstance> & gts,
                                             const SectorGrid & grid);

/// Aggregate view of a tightness report.
struct TightnessSummary
{
  std::size_t instances = 0;
  double fraction_radial_fewer = 0.0;  // instances where the polygon encloses strictly fewer other points
  double mean_radial_precision = 0.0;
  double mean_aabb_precision = 0.0;
  double min_radial_recall = 0.0;
  double min_aabb_recall = 0.0;
  // Quantiles (min, 10%, 50%, 90%, max) of aabb_enclosed_other - radial_enclosed_other.
  std::vector<double> saved_points_quantiles;
};

TightnessSummary summarize_tightness(const std::vector<TightnessEntry> & entries);

}  // namespace radseg
