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

#include "radseg/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "radseg/error.hpp"

namespace radseg
{

std::string to_string(ShapeFamily family)
{
  switch (family) {
    case ShapeFamily::kEllipsoid:
      return "ellipsoid";
    case ShapeFamily::kStarConvex:
      return "star";
    case ShapeFamily::kLShape:
      return "l_shape";
  }
  return "unknown";
}

ShapeFamily shape_family_from_string(const std::string & name)
{
  if (name == "ellipsoid") {
    return ShapeFamily::kEllipsoid;
  }
  if (name == "star") {
    return ShapeFamily::kStarConvex;
  }
  if (name == "l_shape") {
    return ShapeFamily::kLShape;
  }
  throw InvalidInput("unknown shape family '" + name + "' (expected ellipsoid, star or l_shape)");
}

void SceneSpec::validate() const
{
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidInput("scene spec: extent must be positive");
  }
  if (!(noise_sigma >= 0.0)) {
    throw InvalidInput("scene spec: noise_sigma must be non-negative");
  }
  if (!(min_size > 0.0) || !(max_size >= min_size)) {
    throw InvalidInput("scene spec: need 0 < min_size <= max_size");
  }
  if (instance_count > 0 && (shapes.empty() || points_per_instance == 0)) {
    throw InvalidInput("scene spec: instances need a shape family and at least one point");
  }
  if (class_count < 1) {
    throw InvalidInput("scene spec: class_count must be at least 1");
  }
  if (instance_count > 0 && 2.0 * max_size >= extent) {
    throw InvalidInput("scene spec: instances do not fit in the scene extent");
  }
}

namespace
{

using Rng = std::mt19937_64;
using Mat3 = std::array<std::array<double, 3>, 3>;

double uniform(Rng & rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Point3 random_direction(Rng & rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Point3 v{n(rng), n(rng), n(rng)};
    const double len = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (len > 1e-12) {
      return (1.0 / len) * v;
    }
  }
}

Mat3 random_rotation(Rng & rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
  const double len = std::sqrt(w * w + x * x + y * y + z * z);
  w /= len;
  x /= len;
  y /= len;
  z /= len;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

Point3 rotate(const Mat3 & m, const Point3 & p)
{
  return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z, m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
}

Point3 rotate_back(const Mat3 & m, const Point3 & p)
{
  return {m[0][0] * p.x + m[1][0] * p.y + m[2][0] * p.z, m[0][1] * p.x + m[1][1] * p.y + m[2][1] * p.z,
          m[0][2] * p.x + m[1][2] * p.y + m[2][2] * p.z};
}

constexpr std::size_t kStarTerms = 8;

// Low-order polynomial basis on the unit sphere.
std::array<double, kStarTerms> star_basis(const Point3 & u)
{
  return {u.x, u.y, u.z, u.x * u.y, u.y * u.z, u.x * u.z, u.x * u.x - u.y * u.y, 1.5 * u.z * u.z - 0.5};
}

struct Shape
{
  ShapeFamily family;
  Point3 center;
  Mat3 rotation;
  double bound = 0.0;  // bounding radius around center
  Point3 axes;         // ellipsoid semi-axes, or L-shape (arm width, arm width, thickness)
  double star_scale = 0.0;
  std::array<double, kStarTerms> star_coeffs{};

  double star_radius(const Point3 & u) const
  {
    const auto b = star_basis(u);
    double v = 1.0;
    for (std::size_t i = 0; i < kStarTerms; ++i) {
      v += star_coeffs[i] * b[i];
    }
    return star_scale * std::max(0.35, v);
  }

  // L-shape in local coordinates: union of [0,3w]x[0,w] and [0,w]x[0,3w] in xy, thickness h,
  // shifted so the bounding box is centered at the origin.
  bool inside_l(const Point3 & q, double grow) const
  {
    const double w = axes.x;
    const double h = axes.z;
    const Point3 p{q.x + 1.5 * w, q.y + 1.5 * w, q.z + 0.5 * h};
    if (p.z < -grow || p.z > h + grow) {
      return false;
    }
    const bool arm_a = p.x >= -grow && p.x <= 3 * w + grow && p.y >= -grow && p.y <= w + grow;
    const bool arm_b = p.x >= -grow && p.x <= w + grow && p.y >= -grow && p.y <= 3 * w + grow;
    return arm_a || arm_b;
  }

  /// Inside the solid dilated by `grow` meters (approximately, for the curved families).
  bool inside(const Point3 & p, double grow) const
  {
    const Point3 q = rotate_back(rotation, p - center);
    switch (family) {
      case ShapeFamily::kEllipsoid: {
        const double ax = axes.x + grow, ay = axes.y + grow, az = axes.z + grow;
        return (q.x * q.x) / (ax * ax) + (q.y * q.y) / (ay * ay) + (q.z * q.z) / (az * az) < 1.0;
      }
      case ShapeFamily::kStarConvex: {
        const double r = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
        if (r == 0.0) {
          return true;
        }
        return r < star_radius((1.0 / r) * q) + grow;
      }
      case ShapeFamily::kLShape:
        return inside_l(q, grow);
    }
    return false;
  }

  Point3 sample(Rng & rng) const
  {
    Point3 local;
    switch (family) {
      case ShapeFamily::kEllipsoid: {
        const Point3 u = random_direction(rng);
        local = {axes.x * u.x, axes.y * u.y, axes.z * u.z};
        break;
      }
      case ShapeFamily::kStarConvex: {
        const Point3 u = random_direction(rng);
        local = star_radius(u) * u;
        break;
      }
      case ShapeFamily::kLShape: {
        const double w = axes.x;
        const double h = axes.z;
        do {
          local = {uniform(rng, -1.5 * w, 1.5 * w), uniform(rng, -1.5 * w, 1.5 * w), uniform(rng, -0.5 * h, 0.5 * h)};
        } while (!inside_l(local, 0.0));
        break;
      }
    }
    return center + rotate(rotation, local);
  }
};

Shape make_shape(ShapeFamily family, double size, Rng & rng)
{
  Shape s;
  s.family = family;
  s.rotation = random_rotation(rng);
  switch (family) {
    case ShapeFamily::kEllipsoid:
      s.axes = {size * uniform(rng, 0.5, 1.0), size * uniform(rng, 0.5, 1.0), size * uniform(rng, 0.5, 1.0)};
      s.axes.x = size;  // longest axis sets the bound
      s.bound = size;
      break;
    case ShapeFamily::kStarConvex: {
      for (auto & c : s.star_coeffs) {
        c = uniform(rng, -0.25, 0.25);
      }
      // 1 + sum |c_i| * max|b_i| bounds the radial function from above.
      double peak = 1.0;
      for (const double c : s.star_coeffs) {
        peak += std::abs(c);
      }
      s.star_scale = size / peak;
      s.bound = size;
      break;
    }
    case ShapeFamily::kLShape: {
      // Bounding radius of the 3w x 3w x h box with h = w.
      const double w = size / std::sqrt(2.0 * 1.5 * 1.5 + 0.25);
      s.axes = {w, w, w};
      s.bound = size;
      break;
    }
  }
  return s;
}

std::array<std::uint8_t, 3> random_color(Rng & rng)
{
  std::uniform_int_distribution<int> d(40, 255);
  return {static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng))};
}

}  // namespace

Scene generate_scene(const SceneSpec & spec)
{
  spec.validate();
  Rng rng(spec.seed);
  const double half = 0.5 * spec.extent;

  std::vector<Shape> shapes;
  for (std::size_t i = 0; i < spec.instance_count; ++i) {
    const ShapeFamily family = spec.shapes[i % spec.shapes.size()];
    Shape shape = make_shape(family, uniform(rng, spec.min_size, spec.max_size), rng);
    const double lim = half - shape.bound;
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      shape.center = {uniform(rng, -lim, lim), uniform(rng, -lim, lim), uniform(rng, -lim, lim)};
      placed = std::all_of(shapes.begin(), shapes.end(), [&](const Shape & o) {
        return distance(o.center, shape.center) > o.bound + shape.bound + 0.05;
      });
    }
    if (!placed) {
      throw InvalidInput("scene spec: cannot place " + std::to_string(spec.instance_count) +
                         " non-overlapping instances in extent " + std::to_string(spec.extent));
    }
    shapes.push_back(shape);
  }

  Scene scene;
  PointCloud & cloud = scene.cloud;
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::uniform_int_distribution<int> pick_class(0, spec.class_count - 1);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    GroundTruthInstance gt;
    gt.instance_id = static_cast<int>(i);
    gt.class_id = pick_class(rng);
    const auto color = random_color(rng);
    for (std::size_t k = 0; k < spec.points_per_instance; ++k) {
      Point3 p = shapes[i].sample(rng);
      if (spec.noise_sigma > 0.0) {
        p = p + Point3{spec.noise_sigma * jitter(rng), spec.noise_sigma * jitter(rng), spec.noise_sigma * jitter(rng)};
      }
      gt.point_indices.push_back(cloud.positions.size());
      cloud.positions.push_back(p);
      cloud.instance_ids.push_back(gt.instance_id);
      cloud.semantic_ids.push_back(gt.class_id);
      if (spec.with_color) {
        cloud.colors.push_back(color);
      }
    }
    scene.instances.push_back(std::move(gt));
  }

  const double clearance = 3.0 * spec.noise_sigma + 0.02;
  const std::size_t max_attempts = 1000 * (spec.background_points + 1);
  std::size_t attempts = 0;
  std::size_t added = 0;
  while (added < spec.background_points) {
    if (++attempts > max_attempts) {
      throw InvalidInput("scene spec: no room for background points outside the instances");
    }
    const Point3 p{uniform(rng, -half, half), uniform(rng, -half, half), uniform(rng, -half, half)};
    const bool blocked =
      std::any_of(shapes.begin(), shapes.end(), [&](const Shape & s) { return s.inside(p, clearance); });
    if (blocked) {
      continue;
    }
    cloud.positions.push_back(p);
    cloud.instance_ids.push_back(kBackgroundLabel);
    cloud.semantic_ids.push_back(kBackgroundLabel);
    if (spec.with_color) {
      const auto g = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(90, 150)(rng));
      cloud.colors.push_back({g, g, g});
    }
    ++added;
  }
  return scene;
}

}  // namespace radseg
