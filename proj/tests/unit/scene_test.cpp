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
#include <sstream>
#include <string>

#include "doctest.h"
#include "radseg/error.hpp"
#include "radseg/scene.hpp"
#include "radseg/scene_io.hpp"
#include "radseg/synth.hpp"
#include "support/fixtures.hpp"

using namespace radseg;

TEST_CASE("instances_from_labels groups by instance id")
{
  PointCloud c;
  c.positions = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  c.instance_ids = {5, -1, 2, 5};
  c.semantic_ids = {1, -1, 0, 1};
  const auto gts = instances_from_labels(c);
  REQUIRE(gts.size() == 2);
  CHECK(gts[0].instance_id == 2);
  CHECK(gts[0].point_indices == std::vector<std::size_t>{2});
  CHECK(gts[1].instance_id == 5);
  CHECK(gts[1].class_id == 1);
  CHECK(gts[1].point_indices == std::vector<std::size_t>{0, 3});
}

TEST_CASE("instances_from_labels rejects bad labels")
{
  PointCloud c;
  c.positions = {{0, 0, 0}, {1, 0, 0}};
  c.instance_ids = {0, 0};
  c.semantic_ids = {1, 2};
  CHECK_THROWS_AS(instances_from_labels(c), InvalidInput);
  c.semantic_ids = {1, 1};
  c.instance_ids = {-3, 0};
  CHECK_THROWS_AS(instances_from_labels(c), InvalidInput);
  c.instance_ids = {0};
  CHECK_THROWS_AS(instances_from_labels(c), InvalidInput);
}

TEST_CASE("validate_instances catches overlap and range errors")
{
  GroundTruthInstance a{{0, 1}, 0, 0};
  GroundTruthInstance b{{1, 2}, 0, 1};
  CHECK_THROWS_AS((validate_instances({a, b}, 3)), InvalidInput);
  b.point_indices = {2, 3};
  CHECK_THROWS_AS((validate_instances({a, b}, 3)), InvalidInput);
  b.point_indices = {};
  CHECK_THROWS_AS((validate_instances({a, b}, 3)), InvalidInput);
  b.point_indices = {2};
  CHECK_NOTHROW((validate_instances({a, b}, 3)));
  CHECK(foreground_flags(b, 3) == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("scene text round trip is exact")
{
  SceneSpec spec;
  spec.seed = 4;
  spec.with_color = true;
  spec.noise_sigma = 0.01;
  const Scene s = generate_scene(spec);
  std::stringstream buf;
  write_scene(buf, s.cloud);
  const PointCloud back = read_scene(buf);
  CHECK(back.positions == s.cloud.positions);
  CHECK(back.colors == s.cloud.colors);
  CHECK(back.instance_ids == s.cloud.instance_ids);
  CHECK(back.semantic_ids == s.cloud.semantic_ids);
}

TEST_CASE("scene header and format")
{
  PointCloud c;
  c.positions = {{0.5, -1, 2}};
  c.instance_ids = {0};
  c.semantic_ids = {3};
  std::stringstream buf;
  write_scene(buf, c);
  CHECK(buf.str() == "# radseg-scene v1 points=1 instances=1 color=0\n0.5 -1 2 0 3\n");
}

namespace
{

int parse_error_line(const std::string & text)
{
  std::istringstream in(text);
  try {
    read_scene(in);
  } catch (const ParseError & e) {
    return static_cast<int>(e.line());
  }
  return 0;
}

}  // namespace

TEST_CASE("scene parse errors carry the line number")
{
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("hello\n") == 1);
  CHECK(parse_error_line("# radseg-scene v1 instances=0 color=0\n") == 1);
  CHECK(parse_error_line("# radseg-scene v1 points=2 instances=0 color=0\n1 2 3 -1 -1\n1 2 x -1 -1\n") == 3);
  CHECK(parse_error_line("# radseg-scene v1 points=1 instances=0 color=0\n1 2 3 -1\n") == 2);
  CHECK(parse_error_line("# radseg-scene v1 points=1 instances=0 color=0\n1 2 nan -1 -1\n") == 2);
  CHECK(parse_error_line("# radseg-scene v1 points=1 instances=0 color=1\n1 2 3 0 0 300 -1 -1\n") == 2);
  CHECK(parse_error_line("# radseg-scene v1 points=1 instances=0 color=0\n1 2 3 -2 -1\n") == 2);
  CHECK(parse_error_line("# radseg-scene v1 points=2 instances=0 color=0\n1 2 3 -1 -1\n") == 2);
  CHECK(parse_error_line("# radseg-scene v1 points=1 instances=0 color=0\n1 2 3 -1 -1\n4 5 6 -1 -1\n") == 3);
}

TEST_CASE("format_double is shortest round trip")
{
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("generate_scene is deterministic and well formed")
{
  SceneSpec spec;
  spec.seed = 9;
  spec.instance_count = 4;
  spec.shapes = {ShapeFamily::kEllipsoid, ShapeFamily::kStarConvex, ShapeFamily::kLShape};
  const Scene a = generate_scene(spec);
  const Scene b = generate_scene(spec);
  CHECK(a.cloud.positions == b.cloud.positions);
  CHECK(a.cloud.semantic_ids == b.cloud.semantic_ids);
  REQUIRE(a.instances.size() == 4);
  CHECK(a.cloud.size() == 4 * spec.points_per_instance + spec.background_points);
  CHECK_NOTHROW(validate_instances(a.instances, a.cloud.size()));
  const auto from_labels = instances_from_labels(a.cloud);
  REQUIRE(from_labels.size() == a.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(from_labels[i].point_indices == a.instances[i].point_indices);
    CHECK(from_labels[i].class_id == a.instances[i].class_id);
    CHECK(a.instances[i].class_id >= 0);
    CHECK(a.instances[i].class_id < spec.class_count);
  }
  const double half = spec.extent / 2;
  for (const auto & p : a.cloud.positions) {
    CHECK(std::abs(p.x) <= half + 1e-9);
    CHECK(std::abs(p.y) <= half + 1e-9);
    CHECK(std::abs(p.z) <= half + 1e-9);
  }
  spec.seed = 10;
  CHECK(generate_scene(spec).cloud.positions != a.cloud.positions);
}

TEST_CASE("L-shape centroid lies off the instance")
{
  SceneSpec spec;
  spec.instance_count = 1;
  spec.shapes = {ShapeFamily::kLShape};
  spec.points_per_instance = 2000;
  spec.background_points = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    spec.seed = seed;
    const Scene s = generate_scene(spec);
    Point3 mean;
    for (const auto & p : s.cloud.positions) {
      mean = mean + p;
    }
    mean = (1.0 / static_cast<double>(s.cloud.size())) * mean;
    double nearest = 1e9;
    double extent = 0.0;
    for (const auto & p : s.cloud.positions) {
      nearest = std::min(nearest, distance(p, mean));
      extent = std::max(extent, distance(p, mean));
    }
    CHECK(nearest > 0.05 * extent);
  }
}

TEST_CASE("scene spec validation")
{
  SceneSpec spec;
  spec.extent = 0;
  CHECK_THROWS_AS(generate_scene(spec), InvalidInput);
  spec = {};
  spec.min_size = 1.0;
  spec.max_size = 0.5;
  CHECK_THROWS_AS(spec.validate(), InvalidInput);
  spec = {};
  spec.shapes.clear();
  CHECK_THROWS_AS(spec.validate(), InvalidInput);
  spec = {};
  spec.instance_count = 500;
  CHECK_THROWS_AS(generate_scene(spec), InvalidInput);
  CHECK(shape_family_from_string("l_shape") == ShapeFamily::kLShape);
  CHECK(to_string(ShapeFamily::kStarConvex) == "star");
  CHECK_THROWS_AS(shape_family_from_string("cube"), InvalidInput);
}
