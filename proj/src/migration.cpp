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

#include "radseg/migration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

namespace
{

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + exp(s * tanh(x))) and its derivative in x.
struct MarginTerm
{
  double value;
  double slope;
};

MarginTerm tanh_softplus(double x, double s)
{
  const double t = std::tanh(x);
  const double a = s * t;
  return {std::log1p(std::exp(a)), sigmoid(a) * s * (1.0 - t * t)};
}

double sign_or_zero(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_lengths(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays)
{
  if (deltas.size() != frame.size()) {
    throw InvalidInput("migration: " + std::to_string(deltas.size()) + " deltas for " +
                       std::to_string(frame.size()) + " points");
  }
  if (rays.size() != frame.grid.sector_count()) {
    throw InvalidInput("migration: ray count does not match grid");
  }
}

}  // namespace

PointPartition classify_points(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays,
                               std::span<const std::uint8_t> foreground)
{
  check_lengths(frame, deltas, rays);
  if (foreground.size() != frame.size()) {
    throw InvalidInput("classify_points: foreground flag count does not match point count");
  }
  PointPartition part;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const bool inside = frame.radii[i] + deltas[i] <= rays[frame.sectors[i]];
    if (foreground[i] != 0) {
      (inside ? part.tp : part.fn).push_back(i);
    } else if (inside) {
      part.fp.push_back(i);
    } else {
      ++part.true_negatives;
    }
  }
  return part;
}

PointPartition classify_points(const PolarFrame & frame, std::span<const double> deltas, std::span<const double> rays,
                               const GroundTruthInstance & gt)
{
  const auto flags = foreground_flags(gt, frame.size());
  return classify_points(frame, deltas, rays, flags);
}

CoarseLoss coarse_loss(const RadialPolygon & predicted, const RadialPolygon & target)
{
  if (!(predicted.grid == target.grid) || predicted.rays.size() != target.rays.size()) {
    throw InvalidInput("coarse_loss: polygons use different sector grids");
  }
  CoarseLoss out;
  const std::size_t s = predicted.rays.size();
  out.d_rays.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    const double d = predicted.rays[i] - target.rays[i];
    out.ray_term += std::abs(d);
    out.d_rays[i] = sign_or_zero(d) / static_cast<double>(s);
  }
  out.ray_term /= static_cast<double>(s);
  const Point3 dc = predicted.center - target.center;
  out.center_term = std::abs(dc.x) + std::abs(dc.y) + std::abs(dc.z);
  out.d_center = {sign_or_zero(dc.x), sign_or_zero(dc.y), sign_or_zero(dc.z)};
  return out;
}

LossValue misclassification_loss(const PointPartition & partition, const PolarFrame & frame,
                                 std::span<const double> deltas, std::span<const double> rays, MisclassSign sign)
{
  check_lengths(frame, deltas, rays);
  LossValue out;
  out.grad.assign(frame.size(), 0.0);
  const std::size_t miss = partition.fn.size() + partition.fp.size();
  if (miss == 0) {
    return out;
  }
  const double fn_label = sign == MisclassSign::kCorrective ? 1.0 : -1.0;
  const double inv = 1.0 / static_cast<double>(miss);
  auto accumulate = [&](const std::vector<std::size_t> & idx, double label) {
    for (const std::size_t i : idx) {
      const MarginTerm t = tanh_softplus(frame.radii[i] + deltas[i] - rays[frame.sectors[i]], label);
      out.value += t.value;
      out.grad[i] += t.slope * inv;
    }
  };
  accumulate(partition.fn, fn_label);
  accumulate(partition.fp, -fn_label);
  out.value *= inv;
  return out;
}

LossValue sector_cohesion_loss(const PointPartition & partition, const PolarFrame & frame,
                               std::span<const double> deltas)
{
  if (deltas.size() != frame.size()) {
    throw InvalidInput("sector_cohesion_loss: delta count does not match point count");
  }
  LossValue out;
  out.grad.assign(frame.size(), 0.0);
  if (partition.tp.empty()) {
    return out;
  }
  const double inv = 1.0 / static_cast<double>(partition.tp.size());
  for (const std::size_t i : partition.tp) {
    const MarginTerm t = tanh_softplus(deltas[i] + frame.radii[i], 1.0);
    out.value += t.value;
    out.grad[i] += t.slope * inv;
  }
  out.value *= inv;
  return out;
}

LossValue fine_loss(const PointPartition & partition, const PolarFrame & frame, std::span<const double> deltas,
                    std::span<const double> rays, const FineOptions & options)
{
  check_lengths(frame, deltas, rays);
  LossValue out;
  out.grad.assign(frame.size(), 0.0);
  auto add = [&out](const LossValue & term) {
    out.value += term.value;
    for (std::size_t i = 0; i < out.grad.size(); ++i) {
      out.grad[i] += term.grad[i];
    }
  };
  if (options.use_misclassification) {
    add(misclassification_loss(partition, frame, deltas, rays, options.sign));
  }
  if (options.use_cohesion) {
    add(sector_cohesion_loss(partition, frame, deltas));
  }
  return out;
}

LossValue cls_loss(std::span<const double> logits, int target_class)
{
  if (logits.empty() || target_class < 0 || static_cast<std::size_t>(target_class) >= logits.size()) {
    throw InvalidInput("cls_loss: target class " + std::to_string(target_class) + " outside " +
                       std::to_string(logits.size()) + " logits");
  }
  const double peak = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (const double l : logits) {
    z += std::exp(l - peak);
  }
  const double log_z = peak + std::log(z);
  LossValue out;
  out.value = log_z - logits[static_cast<std::size_t>(target_class)];
  out.grad.resize(logits.size());
  for (std::size_t c = 0; c < logits.size(); ++c) {
    out.grad[c] = std::exp(logits[c] - log_z) - (static_cast<int>(c) == target_class ? 1.0 : 0.0);
  }
  return out;
}

LossValue conf_loss(double predicted_conf, double target_iou)
{
  const double d = predicted_conf - target_iou;
  return {d * d, {2.0 * d}};
}

LossValue conf_loss(double predicted_conf, const BinaryMask & proposal_mask, const BinaryMask & gt_mask)
{
  return conf_loss(predicted_conf, mask_iou(proposal_mask, gt_mask));
}

}  // namespace radseg
