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

#include "radseg/scene.hpp"

#include <map>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

void PointCloud::validate() const
{
  const std::size_t n = positions.size();
  if (!colors.empty() && colors.size() != n) {
    throw InvalidInput("point cloud: color count does not match point count");
  }
  if (instance_ids.size() != semantic_ids.size()) {
    throw InvalidInput("point cloud: instance and semantic label counts differ");
  }
  if (!instance_ids.empty() && instance_ids.size() != n) {
    throw InvalidInput("point cloud: label count does not match point count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(positions[i])) {
      throw InvalidInput("point cloud: non-finite coordinate at point " + std::to_string(i));
    }
  }
}

std::vector<GroundTruthInstance> instances_from_labels(const PointCloud & cloud)
{
  cloud.validate();
  std::map<int, GroundTruthInstance> by_id;
  for (std::size_t i = 0; i < cloud.instance_ids.size(); ++i) {
    const int id = cloud.instance_ids[i];
    if (id == kBackgroundLabel) {
      continue;
    }
    if (id < 0) {
      throw InvalidInput("negative instance id " + std::to_string(id) + " at point " + std::to_string(i));
    }
    auto [it, inserted] = by_id.try_emplace(id);
    GroundTruthInstance & gt = it->second;
    if (inserted) {
      gt.instance_id = id;
      gt.class_id = cloud.semantic_ids[i];
    } else if (gt.class_id != cloud.semantic_ids[i]) {
      throw InvalidInput("instance " + std::to_string(id) + " has mixed semantic ids");
    }
    gt.point_indices.push_back(i);
  }
  std::vector<GroundTruthInstance> out;
  out.reserve(by_id.size());
  for (auto & [id, gt] : by_id) {
    out.push_back(std::move(gt));
  }
  return out;
}

void validate_instances(const std::vector<GroundTruthInstance> & instances, std::size_t point_count)
{
  std::vector<std::uint8_t> seen(point_count, 0);
  for (const auto & gt : instances) {
    if (gt.point_indices.empty()) {
      throw InvalidInput("instance " + std::to_string(gt.instance_id) + " has no points");
    }
    for (const std::size_t idx : gt.point_indices) {
      if (idx >= point_count) {
        throw InvalidInput("instance " + std::to_string(gt.instance_id) + " references point " +
                           std::to_string(idx) + " out of range");
      }
      if (seen[idx] != 0) {
        throw InvalidInput("point " + std::to_string(idx) + " belongs to more than one instance");
      }
      seen[idx] = 1;
    }
  }
}

std::vector<std::uint8_t> foreground_flags(const GroundTruthInstance & gt, std::size_t point_count)
{
  std::vector<std::uint8_t> flags(point_count, 0);
  for (const std::size_t idx : gt.point_indices) {
    if (idx >= point_count) {
      throw InvalidInput("instance index out of range");
    }
    flags[idx] = 1;
  }
  return flags;
}

}  // namespace radseg
