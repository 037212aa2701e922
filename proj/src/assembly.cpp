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

#include "radseg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

std::size_t BinaryMask::count() const
{
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

BinaryMask mask_of(const GroundTruthInstance & gt, std::size_t point_count)
{
  return BinaryMask{foreground_flags(gt, point_count)};
}

double mask_iou(const BinaryMask & a, const BinaryMask & b)
{
  if (a.size() != b.size()) {
    throw InvalidInput("mask_iou: masks have different lengths");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a.bits[i] != 0;
    const bool y = b.bits[i] != 0;
    inter += (x && y) ? 1 : 0;
    uni += (x || y) ? 1 : 0;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryMask assemble_mask(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays)
{
  if (deltas.size() != frame.size()) {
    throw InvalidInput("assemble_mask: " + std::to_string(deltas.size()) + " deltas for " +
                       std::to_string(frame.size()) + " points");
  }
  if (rays.size() != frame.grid.sector_count()) {
    throw InvalidInput("assemble_mask: ray count does not match grid");
  }
  BinaryMask mask{std::vector<std::uint8_t>(frame.size(), 0)};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    mask.bits[i] = frame.radii[i] + deltas[i] <= rays[frame.sectors[i]] ? 1 : 0;
  }
  return mask;
}

BinaryMask assemble_mask(const Proposal & proposal, const PointCloud & cloud)
{
  proposal.polygon.validate();
  const PolarFrame frame = make_polar_frame(cloud.positions, proposal.polygon.center, proposal.polygon.grid);
  return assemble_mask(frame, proposal.deltas, proposal.polygon.rays);
}

std::vector<std::size_t> nms(std::span<const ScoredMask> proposals, const NmsOptions & options)
{
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const double c = proposals[i].confidence;
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      throw InvalidInput("nms: confidence of proposal " + std::to_string(i) + " outside [0, 1]");
    }
    if (c >= options.conf_threshold) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return proposals[a].confidence > proposals[b].confidence;
  });

  std::vector<std::size_t> kept;
  for (const std::size_t i : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      if (options.class_aware && proposals[k].class_id != proposals[i].class_id) {
        return false;
      }
      return mask_iou(proposals[k].mask, proposals[i].mask) >= options.iou_threshold;
    });
    if (!suppressed) {
      kept.push_back(i);
    }
  }
  return kept;
}

}  // namespace radseg
