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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "radseg/geometry.hpp"

namespace radseg
{

inline constexpr int kBackgroundLabel = -1;

/// Scene points with optional color and per-point ground-truth labels.
///
/// `instance_ids` and `semantic_ids` are either empty (unlabeled cloud) or one entry per point;
/// kBackgroundLabel marks points that belong to no instance.
struct PointCloud
{
  std::vector<Point3> positions;
  std::vector<std::array<std::uint8_t, 3>> colors;
  std::vector<int> instance_ids;
  std::vector<int> semantic_ids;

  std::size_t size() const { return positions.size(); }
  bool has_color() const { return !colors.empty(); }
  bool has_labels() const { return !instance_ids.empty(); }

  /// Throws InvalidInput on inconsistent lengths or non-finite coordinates.
  void validate() const;
};

struct GroundTruthInstance
{
  std::vector<std::size_t> point_indices;  // sorted ascending
  int class_id = 0;
  int instance_id = 0;
};

struct Scene
{
  PointCloud cloud;
  std::vector<GroundTruthInstance> instances;
};

/// Groups labeled points into instances, ordered by instance id.
/// Throws InvalidInput if an instance mixes semantic ids.
std::vector<GroundTruthInstance> instances_from_labels(const PointCloud & cloud);

/// Checks non-empty, in-range and pairwise-disjoint index sets.
void validate_instances(const std::vector<GroundTruthInstance> & instances, std::size_t point_count);

/// Per-point 0/1 flags of an instance's points.
std::vector<std::uint8_t> foreground_flags(const GroundTruthInstance & gt, std::size_t point_count);

}  // namespace radseg
