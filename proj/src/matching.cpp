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

#include "radseg/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "radseg/error.hpp"

namespace radseg
{

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
: rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

std::vector<std::size_t> duplicate_gt(std::size_t gt_count, std::size_t factor)
{
  if (factor == 0) {
    throw InvalidInput("duplicate_gt: factor must be positive");
  }
  std::vector<std::size_t> columns;
  columns.reserve(gt_count * factor);
  for (std::size_t g = 0; g < gt_count; ++g) {
    columns.insert(columns.end(), factor, g);
  }
  return columns;
}

Assignment hungarian_solve(const CostMatrix & cost)
{
  Assignment out;
  if (cost.empty()) {
    return out;
  }
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) {
      if (!std::isfinite(cost(r, c))) {
        throw InvalidInput("hungarian_solve: non-finite cost at (" + std::to_string(r) + ", " + std::to_string(c) +
                           ")");
      }
    }
  }

  // Square the problem with padding, then run the O(n^3) potential-based solver (1-indexed).
  const std::size_t n = std::max(cost.rows(), cost.cols());
  auto a = [&](std::size_t i, std::size_t j) {
    return (i - 1 < cost.rows() && j - 1 < cost.cols()) ? cost(i - 1, j - 1) : kPaddingCost;
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j] != 0) {
          continue;
        }
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j] != 0) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t r = p[j] - 1;
    const std::size_t c = j - 1;
    if (r < cost.rows() && c < cost.cols()) {
      out.pairs.emplace_back(r, c);
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto & [r, c] : out.pairs) {
    out.total_cost += cost(r, c);
  }
  return out;
}

std::vector<int> resolve_assignment(const Assignment & assignment, std::span<const std::size_t> column_to_gt,
                                    std::size_t proposal_count)
{
  std::vector<int> out(proposal_count, -1);
  for (const auto & [r, c] : assignment.pairs) {
    if (r >= proposal_count || c >= column_to_gt.size()) {
      throw InvalidInput("resolve_assignment: pair outside the matrix");
    }
    out[r] = static_cast<int>(column_to_gt[c]);
  }
  return out;
}

std::vector<InstanceTarget> make_targets(const PointCloud & cloud, const std::vector<GroundTruthInstance> & gts,
                                         const SectorGrid & grid)
{
  std::vector<InstanceTarget> out;
  out.reserve(gts.size());
  for (const auto & gt : gts) {
    out.push_back({exact_target(cloud, gt, grid), foreground_flags(gt, cloud.size()), gt.class_id});
  }
  return out;
}

double pair_cost(const ProposalEstimate & proposal, const PolarFrame & frame, const InstanceTarget & target,
                 const FineOptions & fine)
{
  const RadialPolygon predicted{proposal.center, proposal.rays, target.polygon.grid};
  double cost = coarse_loss(predicted, target.polygon).value();
  if (fine.use_misclassification || fine.use_cohesion) {
    const PointPartition part = classify_points(frame, proposal.deltas, proposal.rays, target.foreground);
    cost += fine_loss(part, frame, proposal.deltas, proposal.rays, fine).value;
  }
  cost += cls_loss(proposal.class_logits, target.class_id).value;
  return cost;
}

CostMatrix build_cost_matrix(std::span<const ProposalEstimate> proposals, std::span<const InstanceTarget> targets,
                             std::span<const Point3> points, std::span<const std::size_t> column_to_gt,
                             const FineOptions & fine)
{
  for (const std::size_t g : column_to_gt) {
    if (g >= targets.size()) {
      throw InvalidInput("build_cost_matrix: column refers to unknown instance");
    }
  }
  CostMatrix cost(proposals.size(), column_to_gt.size());
  if (targets.empty()) {
    return cost;
  }
  const SectorGrid grid = targets.front().polygon.grid;
  for (std::size_t k = 0; k < proposals.size(); ++k) {
    const PolarFrame frame = make_polar_frame(points, proposals[k].center, grid);
    std::vector<double> per_gt(targets.size());
    for (std::size_t g = 0; g < targets.size(); ++g) {
      per_gt[g] = pair_cost(proposals[k], frame, targets[g], fine);
    }
    for (std::size_t c = 0; c < column_to_gt.size(); ++c) {
      cost(k, c) = per_gt[column_to_gt[c]];
    }
  }
  return cost;
}

}  // namespace radseg
