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
#include <utility>
#include <vector>

#include "radseg/geometry.hpp"
#include "radseg/migration.hpp"
#include "radseg/radial.hpp"
#include "radseg/scene.hpp"

namespace radseg
{

/// Padding cost used to square up rectangular matrices before solving.
inline constexpr double kPaddingCost = 1e9;

/// Dense row-major cost matrix; rows are proposals, columns are (duplicated) ground-truth slots.
class CostMatrix
{
public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double & operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Optimal one-to-one assignment, pairs (row, column) sorted by row.
struct Assignment
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_cost = 0.0;
};

/// Column -> original ground-truth index, each instance repeated `factor` times in a row.
std::vector<std::size_t> duplicate_gt(std::size_t gt_count, std::size_t factor = 4);

/// Minimum-cost assignment (Kuhn-Munkres with potentials). Every row or every column is covered,
/// whichever is fewer. Throws InvalidInput on non-finite entries.
Assignment hungarian_solve(const CostMatrix & cost);

/// Per-proposal matched ground-truth index, or -1 for unmatched proposals.
std::vector<int> resolve_assignment(const Assignment & assignment, std::span<const std::size_t> column_to_gt,
                                    std::size_t proposal_count);

/// Quantities a proposal predicts, in realized (not reparameterized) form.
struct ProposalEstimate
{
  Point3 center;
  std::vector<double> rays;
  std::vector<double> deltas;
  std::vector<double> class_logits;
};

/// Everything a proposal is supervised against for one ground-truth instance.
struct InstanceTarget
{
  RadialPolygon polygon;  // exact center and ray targets
  std::vector<std::uint8_t> foreground;
  int class_id = 0;
};

std::vector<InstanceTarget> make_targets(const PointCloud & cloud, const std::vector<GroundTruthInstance> & gts,
                                         const SectorGrid & grid);

/// Matching cost of one proposal against one instance: coarse + fine + classification loss.
double pair_cost(const ProposalEstimate & proposal, const PolarFrame & frame, const InstanceTarget & target,
                 const FineOptions & fine);

/// Cost matrix over proposals x duplicated ground-truth columns.
CostMatrix build_cost_matrix(std::span<const ProposalEstimate> proposals, std::span<const InstanceTarget> targets,
                             std::span<const Point3> points, std::span<const std::size_t> column_to_gt,
                             const FineOptions & fine = {});

}  // namespace radseg
