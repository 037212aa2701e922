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

#include "radseg/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

namespace
{

void require_nonempty(const PointCloud & cloud, const GroundTruthInstance & gt)
{
  if (gt.point_indices.empty()) {
    throw InvalidInput("instance " + std::to_string(gt.instance_id) + " has no points");
  }
  for (const std::size_t idx : gt.point_indices) {
    if (idx >= cloud.size()) {
      throw InvalidInput("instance " + std::to_string(gt.instance_id) + " index out of range");
    }
  }
}

}  // namespace

void RadialPolygon::validate() const
{
  grid.validate();
  if (rays.size() != grid.sector_count()) {
    throw InvalidInput("radial polygon has " + std::to_string(rays.size()) + " rays for " +
                       std::to_string(grid.sector_count()) + " sectors");
  }
  for (const double r : rays) {
    if (!(r >= kMinRay) || !std::isfinite(r)) {
      throw InvalidInput("radial polygon ray below minimum or non-finite");
    }
  }
  if (!is_finite(center)) {
    throw InvalidInput("radial polygon center is non-finite");
  }
}

Point3 compute_center_target(const PointCloud & cloud, const GroundTruthInstance & gt)
{
  require_nonempty(cloud, gt);
  Point3 sum;
  for (const std::size_t idx : gt.point_indices) {
    sum = sum + cloud.positions[idx];
  }
  return (1.0 / static_cast<double>(gt.point_indices.size())) * sum;
}

RadialPolygon compute_ray_targets(const PointCloud & cloud, const GroundTruthInstance & gt, const Point3 & center,
                                  const SectorGrid & grid)
{
  require_nonempty(cloud, gt);
  grid.validate();
  RadialPolygon poly{center, std::vector<double>(grid.sector_count(), kMinRay), grid};
  for (const std::size_t idx : gt.point_indices) {
    const SphericalCoord s = to_spherical(cloud.positions[idx], center);
    double & ray = poly.rays[find_sector(s, grid)];
    ray = std::max(ray, s.r);
  }
  return poly;
}

RadialPolygon exact_target(const PointCloud & cloud, const GroundTruthInstance & gt, const SectorGrid & grid)
{
  return compute_ray_targets(cloud, gt, compute_center_target(cloud, gt), grid);
}

bool contains(const RadialPolygon & poly, const Point3 & p)
{
  const SphericalCoord s = to_spherical(p, poly.center);
  return s.r <= poly.rays[find_sector(s, poly.grid)];
}

Aabb aabb_of(const PointCloud & cloud, const GroundTruthInstance & gt)
{
  require_nonempty(cloud, gt);
  Aabb box{cloud.positions[gt.point_indices.front()], cloud.positions[gt.point_indices.front()]};
  for (const std::size_t idx : gt.point_indices) {
    const Point3 & p = cloud.positions[idx];
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
  }
  return box;
}

bool aabb_contains(const Aabb & box, const Point3 & p)
{
  return box.min.x <= p.x && p.x <= box.max.x && box.min.y <= p.y && p.y <= box.max.y && box.min.z <= p.z &&
         p.z <= box.max.z;
}

double TightnessEntry::radial_precision() const
{
  const double inside = radial_recall * static_cast<double>(instance_points);
  const double total = inside + static_cast<double>(radial_enclosed_other);
  return total > 0.0 ? inside / total : 0.0;
}

double TightnessEntry::aabb_precision() const
{
  const double inside = aabb_recall * static_cast<double>(instance_points);
  const double total = inside + static_cast<double>(aabb_enclosed_other);
  return total > 0.0 ? inside / total : 0.0;
}

std::vector<TightnessEntry> tightness_report(const PointCloud & cloud, const std::vector<GroundTruthInstance> & gts,
                                             const SectorGrid & grid)
{
  std::vector<TightnessEntry> out;
  out.reserve(gts.size());
  for (const auto & gt : gts) {
    const RadialPolygon poly = exact_target(cloud, gt, grid);
    const Aabb box = aabb_of(cloud, gt);
    const auto member = foreground_flags(gt, cloud.size());
    TightnessEntry e;
    e.instance_id = gt.instance_id;
    e.class_id = gt.class_id;
    e.instance_points = gt.point_indices.size();
    std::size_t radial_hits = 0;
    std::size_t box_hits = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const bool in_poly = contains(poly, cloud.positions[i]);
      const bool in_box = aabb_contains(box, cloud.positions[i]);
      if (member[i] != 0) {
        radial_hits += in_poly ? 1 : 0;
        box_hits += in_box ? 1 : 0;
      } else {
        e.radial_enclosed_other += in_poly ? 1 : 0;
        e.aabb_enclosed_other += in_box ? 1 : 0;
      }
    }
    e.radial_recall = static_cast<double>(radial_hits) / static_cast<double>(e.instance_points);
    e.aabb_recall = static_cast<double>(box_hits) / static_cast<double>(e.instance_points);
    out.push_back(e);
  }
  return out;
}

TightnessSummary summarize_tightness(const std::vector<TightnessEntry> & entries)
{
  TightnessSummary s;
  s.instances = entries.size();
  if (entries.empty()) {
    return s;
  }
  s.min_radial_recall = 1.0;
  s.min_aabb_recall = 1.0;
  std::vector<double> saved;
  std::size_t fewer = 0;
  for (const auto & e : entries) {
    fewer += e.radial_enclosed_other < e.aabb_enclosed_other ? 1 : 0;
    s.mean_radial_precision += e.radial_precision();
    s.mean_aabb_precision += e.aabb_precision();
    s.min_radial_recall = std::min(s.min_radial_recall, e.radial_recall);
    s.min_aabb_recall = std::min(s.min_aabb_recall, e.aabb_recall);
    saved.push_back(static_cast<double>(e.aabb_enclosed_other) - static_cast<double>(e.radial_enclosed_other));
  }
  const double n = static_cast<double>(entries.size());
  s.fraction_radial_fewer = static_cast<double>(fewer) / n;
  s.mean_radial_precision /= n;
  s.mean_aabb_precision /= n;
  std::sort(saved.begin(), saved.end());
  for (const double q : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    // Nearest-rank quantile.
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(saved.size() - 1)));
    s.saved_points_quantiles.push_back(saved[idx]);
  }
  return s;
}

}  // namespace radseg
