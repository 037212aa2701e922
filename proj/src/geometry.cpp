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

#include "radseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radseg/error.hpp"

namespace radseg
{

bool is_finite(const Point3 & p)
{
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

double distance(const Point3 & a, const Point3 & b)
{
  const Point3 d = a - b;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

void SectorGrid::validate() const
{
  if (n_theta < 1 || n_phi < 1) {
    throw InvalidInput("sector grid needs at least one bin per axis, got " + std::to_string(n_theta) +
                       "/" + std::to_string(n_phi));
  }
}

SphericalCoord to_spherical(const Point3 & p, const Point3 & center)
{
  if (!is_finite(p) || !is_finite(center)) {
    throw InvalidInput("to_spherical: non-finite coordinate");
  }
  const Point3 d = p - center;
  const double r = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
  if (r == 0.0) {
    return {0.0, 0.0, 0.0};
  }
  double theta = std::atan2(d.y, d.x);
  if (theta <= -std::numbers::pi) {
    theta = std::numbers::pi;
  }
  const double phi = std::asin(std::clamp(d.z / r, -1.0, 1.0));
  return {r, theta, phi};
}

Point3 from_spherical(const SphericalCoord & s, const Point3 & center)
{
  if (!(s.r >= 0.0) || !std::isfinite(s.r) || !std::isfinite(s.theta) || !std::isfinite(s.phi)) {
    throw InvalidInput("from_spherical: coordinate out of range");
  }
  const double c = std::cos(s.phi);
  return {center.x + s.r * c * std::cos(s.theta), center.y + s.r * c * std::sin(s.theta),
          center.z + s.r * std::sin(s.phi)};
}

namespace
{

int uniform_bin(double value, double lo, double span, int bins)
{
  const auto idx = static_cast<int>(std::floor((value - lo) / span * bins));
  return std::clamp(idx, 0, bins - 1);
}

}  // namespace

std::size_t find_sector(const SphericalCoord & s, const SectorGrid & grid)
{
  const int it = uniform_bin(s.theta, -std::numbers::pi, 2.0 * std::numbers::pi, grid.n_theta);
  const int ip = uniform_bin(s.phi, -std::numbers::pi / 2.0, std::numbers::pi, grid.n_phi);
  return static_cast<std::size_t>(it) * static_cast<std::size_t>(grid.n_phi) + static_cast<std::size_t>(ip);
}

PolarFrame make_polar_frame(std::span<const Point3> points, const Point3 & center, const SectorGrid & grid)
{
  grid.validate();
  PolarFrame frame;
  frame.center = center;
  frame.grid = grid;
  frame.radii.resize(points.size());
  frame.sectors.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SphericalCoord s = to_spherical(points[i], center);
    frame.radii[i] = s.r;
    frame.sectors[i] = find_sector(s, grid);
  }
  return frame;
}

}  // namespace radseg
