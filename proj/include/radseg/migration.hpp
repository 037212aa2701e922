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

#include "radseg/assembly.hpp"
#include "radseg/geometry.hpp"
#include "radseg/radial.hpp"
#include "radseg/scene.hpp"

namespace radseg
{

/// Label assignment for misclassified points in the soft-margin loss.
///
/// kCorrective uses y = +1 for false negatives and y = -1 for false positives, so a descent step
/// pulls false negatives inside their ray and pushes false positives outside. kInverted swaps the
/// labels and is kept only for comparison runs.
enum class MisclassSign { kCorrective, kInverted };

/// Split of scene points under one proposal. Index lists are ascending.
struct PointPartition
{
  std::vector<std::size_t> fn;  // foreground, migrated radius beyond the ray
  std::vector<std::size_t> fp;  // background, migrated radius within the ray
  std::vector<std::size_t> tp;  // foreground, migrated radius within the ray
  std::size_t true_negatives = 0;
};

/// Compares r + delta against the sector ray; equality counts as inside.
PointPartition classify_points(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays,
                               std::span<const std::uint8_t> foreground);
PointPartition classify_points(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays,
                               const GroundTruthInstance & gt);

/// A loss value and its gradient with respect to the loss's own parameter vector.
struct LossValue
{
  double value = 0.0;
  std::vector<double> grad;
};

/// L1 ray term (mean over sectors) plus L1 center term, with subgradients (0 at a tie).
struct CoarseLoss
{
  double ray_term = 0.0;
  double center_term = 0.0;
  std::vector<double> d_rays;
  Point3 d_center;

  double value() const { return ray_term + center_term; }
};

CoarseLoss coarse_loss(const RadialPolygon & predicted, const RadialPolygon & target);

/// Mean soft-margin loss over fn and fp points: log(1 + exp(y * tanh(r + delta - ray))).
/// Gradient is with respect to the deltas only (one entry per scene point); rays are references.
LossValue misclassification_loss(const PointPartition & partition, const PolarFrame & frame,
                                 std::span<const double> deltas, std::span<const double> rays,
                                 MisclassSign sign = MisclassSign::kCorrective);

/// Mean of log(1 + exp(tanh(delta + r))) over tp points, gradient with respect to the deltas.
LossValue sector_cohesion_loss(const PointPartition & partition, const PolarFrame & frame,
                               std::span<const double> deltas);

struct FineOptions
{
  bool use_misclassification = true;
  bool use_cohesion = true;
  MisclassSign sign = MisclassSign::kCorrective;
};

/// Sum of the enabled fine terms.
LossValue fine_loss(const PointPartition & partition, const PolarFrame & frame, std::span<const double> deltas,
                    std::span<const double> rays, const FineOptions & options = {});

/// Softmax cross-entropy; gradient with respect to the logits.
LossValue cls_loss(std::span<const double> logits, int target_class);

/// (predicted - IoU(proposal, gt))^2; gradient (size 1) with respect to the prediction.
LossValue conf_loss(double predicted_conf, const BinaryMask & proposal_mask, const BinaryMask & gt_mask);
LossValue conf_loss(double predicted_conf, double target_iou);

}  // namespace radseg
