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
#include <string>
#include <vector>

#include "radseg/assembly.hpp"
#include "radseg/geometry.hpp"
#include "radseg/matching.hpp"
#include "radseg/metrics.hpp"
#include "radseg/migration.hpp"
#include "radseg/scene.hpp"

namespace radseg
{

/// Per parameter group step sizes for plain gradient descent.
struct StepSizes
{
  double center = 0.02;
  double ray = 2.0;     // applied to log-ray parameters
  double delta = 50.0;  // per-point deltas; their losses are means over many points
  double cls = 1.0;
  double conf = 4.0;    // applied to the confidence logit
};

/// Loss weights in the order classification, confidence, coarse, fine.
struct LossWeights
{
  double cls = 0.5;
  double conf = 0.5;
  double coarse = 1.0;
  double fine = 1.0;
};

struct FitConfig
{
  std::size_t proposal_count = 4;
  SectorGrid grid{5, 5};
  LossWeights lambdas;
  StepSizes learning_rate;
  std::size_t iterations = 500;
  std::size_t rematch_interval = 25;
  bool cosine_decay = false;
  std::uint64_t seed = 0;
  std::size_t gt_duplication = 4;
  double ray_init_scale = 0.25;  // initial rays = scale * median point distance to the scene centroid
  FineOptions fine;
  bool train_deltas = true;
  NmsOptions nms;
  int class_count = 0;  // 0 derives it from the largest label in the scene
  unsigned threads = 1;

  /// Throws InvalidInput listing every offending field.
  void validate() const;
};

/// Free parameters of one proposal. Rays are exp(ray_logits) and confidence is
/// sigmoid(conf_logit), so both stay in range under any update.
struct ProposalParams
{
  Point3 center;
  std::vector<double> ray_logits;
  std::vector<double> deltas;
  std::vector<double> class_logits;
  double conf_logit = 0.0;

  std::vector<double> rays() const;
  double confidence() const;
  int predicted_class() const;
  ProposalEstimate estimate() const;
};

struct FitState
{
  std::vector<ProposalParams> proposals;
  std::vector<int> matched_gt;  // per proposal, -1 when unmatched
  std::vector<double> loss_history;
};

/// Quantities held constant while differentiating: each proposal's polar frame (radii and
/// sectors around its current center), its current rays, and its confidence target.
struct DetachedState
{
  std::vector<PolarFrame> frames;
  std::vector<std::vector<double>> rays;
  std::vector<double> target_iou;
};

struct LossTerms
{
  double cls = 0.0;
  double conf = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  double total = 0.0;
};

/// Weighted loss and its gradient, laid out like the parameters (ray_logits hold d/d ray_logits,
/// conf_logit holds d/d conf_logit).
struct TotalLoss
{
  LossTerms terms;
  std::vector<ProposalParams> grad;
};

DetachedState detach(const FitState & state, std::span<const InstanceTarget> targets, std::span<const Point3> points,
                     const SectorGrid & grid);

/// Matched proposals contribute lambda-weighted cls, conf, coarse and fine terms; unmatched
/// proposals only a confidence term with target 0.
TotalLoss total_loss(const FitState & state, const DetachedState & detached, std::span<const InstanceTarget> targets,
                     const FitConfig & config);

FitState initialize_state(const PointCloud & cloud, const FitConfig & config, int class_count);

/// Recomputes the Hungarian assignment of proposals to duplicated ground-truth slots.
void rematch(FitState & state, std::span<const InstanceTarget> targets, std::span<const Point3> points,
             const FitConfig & config);

struct FitResult
{
  std::vector<Proposal> proposals;   // every proposal after the last step
  std::vector<BinaryMask> masks;     // assembled mask of each proposal
  std::vector<std::size_t> kept;     // NMS survivors, in NMS order
  std::vector<double> loss_history;  // total loss before each step
  EvalResult eval;
  std::vector<double> best_iou;      // per instance, best IoU over kept proposals
  double mean_best_iou = 0.0;
  int class_count = 0;
};

/// Largest semantic id + 1, at least 1.
int derive_class_count(const Scene & scene);

/// Gradient descent on the total loss, rematching every rematch_interval steps.
/// Throws Divergence when the loss becomes non-finite.
FitResult fit_scene(const Scene & scene, const FitConfig & config);

struct AblationVariant
{
  std::string name;
  SectorGrid grid;
  bool use_misclassification = true;
  bool use_cohesion = true;
  bool train_deltas = true;
};

/// RID only, RID + misclassification, RID + cohesion, full.
std::vector<AblationVariant> component_variants(const SectorGrid & grid);

/// Full model at each n/n grid for n in [from, to].
std::vector<AblationVariant> grid_variants(int from, int to);

struct AblationRow
{
  AblationVariant variant;
  std::size_t scenes = 0;
  double mean_iou = 0.0;
  double mean_ap = 0.0;
  double mean_ap50 = 0.0;
};

/// Fits every scene under every variant (scenes in parallel) and averages the results.
std::vector<AblationRow> ablation_run(const std::vector<Scene> & scenes, const FitConfig & base,
                                      const std::vector<AblationVariant> & variants);

}  // namespace radseg
