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
#include <span>
#include <vector>

#include "radseg/geometry.hpp"
#include "radseg/radial.hpp"
#include "radseg/scene.hpp"

namespace radseg
{

/// Per-point membership flags over a scene.
struct BinaryMask
{
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::size_t count() const;

  friend bool operator==(const BinaryMask &, const BinaryMask &) = default;
};

BinaryMask mask_of(const GroundTruthInstance & gt, std::size_t point_count);

/// |a & b| / |a | b|, and 0 when both masks are empty. Throws InvalidInput on size mismatch.
double mask_iou(const BinaryMask & a, const BinaryMask & b);

/// One instance hypothesis with its per-point radial deltas.
struct Proposal
{
  RadialPolygon polygon;
  std::vector<double> deltas;  // one per scene point
  int class_id = 0;
  double confidence = 0.0;
};

/// Bit i is set iff r_i + delta_i <= ray of point i's sector, radii taken around the polygon center.
BinaryMask assemble_mask(const Proposal & proposal, const PointCloud & cloud);

/// Same rule evaluated on a precomputed frame.
BinaryMask assemble_mask(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays);

struct ScoredMask
{
  BinaryMask mask;
  int class_id = 0;
  double confidence = 0.0;
};

struct NmsOptions
{
  double conf_threshold = 0.2;
  double iou_threshold = 0.5;
  bool class_aware = false;
};

/// Greedy mask NMS.
///
/// Proposals below conf_threshold are dropped. The remaining ones are visited by descending
/// confidence (ties by lower index); a proposal is kept unless its IoU with an already kept
/// proposal (of the same class when class_aware) reaches iou_threshold. Returned indices are in
/// visiting order.
std::vector<std::size_t> nms(std::span<const ScoredMask> proposals, const NmsOptions & options = {});

}  // namespace radseg
