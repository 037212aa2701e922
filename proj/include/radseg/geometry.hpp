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
#include <span>
#include <vector>

namespace radseg
{

struct Point3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3 &, const Point3 &) = default;
};

inline Point3 operator+(const Point3 & a, const Point3 & b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(const Point3 & a, const Point3 & b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(double s, const Point3 & p) { return {s * p.x, s * p.y, s * p.z}; }

bool is_finite(const Point3 & p);
double distance(const Point3 & a, const Point3 & b);

/// Spherical coordinates around some origin.
///
/// `theta` is the azimuth in the xy-plane measured from +x towards +y, in (-pi, pi].
/// `phi` is the elevation above the xy-plane, in [-pi/2, pi/2].
struct SphericalCoord
{
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Uniform angular partition into n_theta azimuth bins times n_phi elevation bins.
///
/// Sector index layout is `i_theta * n_phi + i_phi`, used everywhere in the library.
struct SectorGrid
{
  int n_theta = 5;
  int n_phi = 5;

  std::size_t sector_count() const { return static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi); }
  void validate() const;

  friend bool operator==(const SectorGrid &, const SectorGrid &) = default;
};

/// Throws InvalidInput on non-finite input. A point equal to the center maps to (0, 0, 0).
SphericalCoord to_spherical(const Point3 & p, const Point3 & center);

Point3 from_spherical(const SphericalCoord & s, const Point3 & center);

/// Sector containing the direction of `s`. theta = pi and phi = pi/2 clamp into the last bins.
std::size_t find_sector(const SphericalCoord & s, const SectorGrid & grid);

/// Radius and sector of every point relative to one center.
struct PolarFrame
{
  Point3 center;
  SectorGrid grid;
  std::vector<double> radii;
  std::vector<std::size_t> sectors;

  std::size_t size() const { return radii.size(); }
};

PolarFrame make_polar_frame(std::span<const Point3> points, const Point3 & center, const SectorGrid & grid);

}  // namespace radseg
