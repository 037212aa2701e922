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

#include "radseg/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

double average_precision(std::span<const std::uint8_t> ranked_tp, std::size_t gt_count)
{
  if (gt_count == 0 || ranked_tp.empty()) {
    return 0.0;
  }
  const std::size_t n = ranked_tp.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += ranked_tp[k] != 0 ? 1 : 0;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(gt_count);
  }
  for (std::size_t k = n - 1; k > 0; --k) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ap += (recall[k] - prev_recall) * precision[k];
    prev_recall = recall[k];
  }
  return ap;
}

namespace
{

struct ThresholdOutcome
{
  double ap = 0.0;
  std::size_t tp = 0;
};

ThresholdOutcome match_at(const std::vector<std::vector<double>> & iou, std::size_t gt_count, double threshold)
{
  std::vector<char> claimed(gt_count, 0);
  std::vector<std::uint8_t> ranked(iou.size(), 0);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < iou.size(); ++k) {
    std::size_t best = gt_count;
    double best_iou = -1.0;
    for (std::size_t g = 0; g < gt_count; ++g) {
      if (claimed[g] == 0 && iou[k][g] >= threshold && iou[k][g] > best_iou) {
        best = g;
        best_iou = iou[k][g];
      }
    }
    if (best < gt_count) {
      claimed[best] = 1;
      ranked[k] = 1;
      ++tp;
    }
  }
  return {average_precision(ranked, gt_count), tp};
}

}  // namespace

EvalResult evaluate(std::span<const ScoredMask> predictions, std::span<const GtMask> gts, std::span<const int> classes)
{
  auto known = [&](int c) { return std::find(classes.begin(), classes.end(), c) != classes.end(); };
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!known(predictions[i].class_id)) {
      throw InvalidInput("evaluate: prediction " + std::to_string(i) + " has unknown class id " +
                         std::to_string(predictions[i].class_id));
    }
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!known(gts[g].class_id)) {
      throw InvalidInput("evaluate: ground truth " + std::to_string(g) + " has unknown class id " +
                         std::to_string(gts[g].class_id));
    }
  }

  EvalResult result;
  std::size_t classes_with_gt = 0;
  for (const int cls : classes) {
    ClassMetrics m;
    m.class_id = cls;
    std::vector<std::size_t> pred_idx;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      if (predictions[i].class_id == cls && predictions[i].mask.count() > 0) {
        pred_idx.push_back(i);
      }
    }
    std::stable_sort(pred_idx.begin(), pred_idx.end(), [&](std::size_t a, std::size_t b) {
      return predictions[a].confidence > predictions[b].confidence;
    });
    std::vector<std::size_t> gt_idx;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gts[g].class_id == cls) {
        gt_idx.push_back(g);
      }
    }
    m.gt_count = gt_idx.size();
    m.prediction_count = pred_idx.size();
    if (m.gt_count > 0) {
      std::vector<std::vector<double>> iou(pred_idx.size(), std::vector<double>(gt_idx.size()));
      for (std::size_t k = 0; k < pred_idx.size(); ++k) {
        for (std::size_t g = 0; g < gt_idx.size(); ++g) {
          iou[k][g] = mask_iou(predictions[pred_idx[k]].mask, gts[gt_idx[g]].mask);
        }
      }
      for (const double t : kApThresholds) {
        m.ap += match_at(iou, gt_idx.size(), t).ap;
      }
      m.ap /= static_cast<double>(kApThresholds.size());
      const ThresholdOutcome at50 = match_at(iou, gt_idx.size(), 0.5);
      m.ap50 = at50.ap;
      m.ap25 = match_at(iou, gt_idx.size(), 0.25).ap;
      m.precision50 =
        pred_idx.empty() ? 0.0 : static_cast<double>(at50.tp) / static_cast<double>(pred_idx.size());
      m.recall50 = static_cast<double>(at50.tp) / static_cast<double>(gt_idx.size());

      ++classes_with_gt;
      result.ap += m.ap;
      result.ap50 += m.ap50;
      result.ap25 += m.ap25;
      result.mprec50 += m.precision50;
      result.mrec50 += m.recall50;
    }
    result.per_class.push_back(m);
  }
  if (classes_with_gt > 0) {
    const double inv = 1.0 / static_cast<double>(classes_with_gt);
    result.ap *= inv;
    result.ap50 *= inv;
    result.ap25 *= inv;
    result.mprec50 *= inv;
    result.mrec50 *= inv;
  }
  return result;
}

}  // namespace radseg
