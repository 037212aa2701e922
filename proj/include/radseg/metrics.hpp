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
#include <span>
#include <vector>

#include "radseg/assembly.hpp"

namespace radseg
{

/// IoU thresholds averaged into `ap`.
inline constexpr std::array<double, 10> kApThresholds{0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};

struct GtMask
{
  BinaryMask mask;
  int class_id = 0;
};

struct ClassMetrics
{
  int class_id = 0;
  std::size_t gt_count = 0;
  std::size_t prediction_count = 0;
  double ap = 0.0;
  double ap50 = 0.0;
  double ap25 = 0.0;
  double precision50 = 0.0;
  double recall50 = 0.0;
};

struct EvalResult
{
  double ap = 0.0;
  double ap50 = 0.0;
  double ap25 = 0.0;
  double mprec50 = 0.0;
  double mrec50 = 0.0;
  std::vector<ClassMetrics> per_class;  // one entry per requested class, in request order
};

/// All-point interpolated AP of a ranked list of true/false positives against `gt_count` instances.
double average_precision(std::span<const std::uint8_t> ranked_tp, std::size_t gt_count);

/// Instance-mask AP evaluation.
///
/// Per class and IoU threshold, predictions are visited by descending confidence (ties by lower
/// index) and each claims the unmatched ground truth of its class with the highest IoU at or
/// above the threshold. Class means only include classes that have ground truth. Predictions
/// with empty masks are ignored. Throws InvalidInput for class ids outside `classes`.
EvalResult evaluate(std::span<const ScoredMask> predictions, std::span<const GtMask> gts, std::span<const int> classes);

}  // namespace radseg
