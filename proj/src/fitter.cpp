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

#include "radseg/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "radseg/error.hpp"
#include "radseg/parallel.hpp"

namespace radseg
{

namespace
{

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void FitConfig::validate() const
{
  std::vector<std::string> bad;
  if (proposal_count == 0) {
    bad.emplace_back("proposal_count");
  }
  if (grid.n_theta < 1 || grid.n_phi < 1) {
    bad.emplace_back("grid");
  }
  for (const double l : {lambdas.cls, lambdas.conf, lambdas.coarse, lambdas.fine}) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      bad.emplace_back("lambdas");
      break;
    }
  }
  const StepSizes & lr = learning_rate;
  for (const double s : {lr.center, lr.ray, lr.delta, lr.cls, lr.conf}) {
    if (!positive(s)) {
      bad.emplace_back("learning_rate");
      break;
    }
  }
  if (rematch_interval == 0) {
    bad.emplace_back("rematch_interval");
  }
  if (gt_duplication == 0) {
    bad.emplace_back("gt_duplication");
  }
  if (!positive(ray_init_scale)) {
    bad.emplace_back("ray_init_scale");
  }
  if (!(nms.conf_threshold >= 0.0 && nms.conf_threshold <= 1.0)) {
    bad.emplace_back("nms.conf_threshold");
  }
  if (!(nms.iou_threshold > 0.0 && nms.iou_threshold <= 1.0)) {
    bad.emplace_back("nms.iou_threshold");
  }
  if (class_count < 0) {
    bad.emplace_back("class_count");
  }
  if (!bad.empty()) {
    std::string msg = "invalid fit config fields:";
    for (const auto & b : bad) {
      msg += " " + b;
    }
    throw InvalidInput(msg);
  }
}

std::vector<double> ProposalParams::rays() const
{
  std::vector<double> out(ray_logits.size());
  std::transform(ray_logits.begin(), ray_logits.end(), out.begin(),
                 [](double a) { return std::max(std::exp(a), kMinRay); });
  return out;
}

double ProposalParams::confidence() const { return sigmoid(conf_logit); }

int ProposalParams::predicted_class() const
{
  return static_cast<int>(std::max_element(class_logits.begin(), class_logits.end()) - class_logits.begin());
}

ProposalEstimate ProposalParams::estimate() const { return {center, rays(), deltas, class_logits}; }

DetachedState detach(const FitState & state, std::span<const InstanceTarget> targets, std::span<const Point3> points,
                     const SectorGrid & grid)
{
  DetachedState d;
  const std::size_t k_count = state.proposals.size();
  d.frames.reserve(k_count);
  d.rays.reserve(k_count);
  d.target_iou.assign(k_count, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    const ProposalParams & p = state.proposals[k];
    d.frames.push_back(make_polar_frame(points, p.center, grid));
    d.rays.push_back(p.rays());
    const int g = k < state.matched_gt.size() ? state.matched_gt[k] : -1;
    if (g >= 0) {
      const BinaryMask mask = assemble_mask(d.frames.back(), p.deltas, d.rays.back());
      d.target_iou[k] = mask_iou(mask, BinaryMask{targets[static_cast<std::size_t>(g)].foreground});
    }
  }
  return d;
}

TotalLoss total_loss(const FitState & state, const DetachedState & detached, std::span<const InstanceTarget> targets,
                     const FitConfig & config)
{
  const LossWeights & w = config.lambdas;
  TotalLoss out;
  out.grad.resize(state.proposals.size());
  for (std::size_t k = 0; k < state.proposals.size(); ++k) {
    const ProposalParams & p = state.proposals[k];
    ProposalParams & g = out.grad[k];
    g.ray_logits.assign(p.ray_logits.size(), 0.0);
    g.deltas.assign(p.deltas.size(), 0.0);
    g.class_logits.assign(p.class_logits.size(), 0.0);

    const int matched = k < state.matched_gt.size() ? state.matched_gt[k] : -1;
    const double conf = p.confidence();
    const LossValue lc = conf_loss(conf, matched >= 0 ? detached.target_iou[k] : 0.0);
    out.terms.conf += w.conf * lc.value;
    g.conf_logit = w.conf * lc.grad[0] * conf * (1.0 - conf);
    if (matched < 0) {
      continue;
    }
    const InstanceTarget & target = targets[static_cast<std::size_t>(matched)];

    const LossValue cls = cls_loss(p.class_logits, target.class_id);
    out.terms.cls += w.cls * cls.value;
    for (std::size_t c = 0; c < cls.grad.size(); ++c) {
      g.class_logits[c] = w.cls * cls.grad[c];
    }

    const std::vector<double> rays = p.rays();
    const CoarseLoss coarse = coarse_loss(RadialPolygon{p.center, rays, target.polygon.grid}, target.polygon);
    out.terms.coarse += w.coarse * coarse.value();
    g.center = w.coarse * coarse.d_center;
    // d ray / d logit is exp(logit); the kMinRay floor in rays() is passed straight through.
    for (std::size_t s = 0; s < rays.size(); ++s) {
      g.ray_logits[s] = w.coarse * coarse.d_rays[s] * std::exp(p.ray_logits[s]);
    }

    const FineOptions & fine = config.fine;
    if (fine.use_misclassification || fine.use_cohesion) {
      const PolarFrame & frame = detached.frames[k];
      const std::vector<double> & ref_rays = detached.rays[k];
      const PointPartition part = classify_points(frame, p.deltas, ref_rays, target.foreground);
      const LossValue lf = fine_loss(part, frame, p.deltas, ref_rays, fine);
      out.terms.fine += w.fine * lf.value;
      for (std::size_t i = 0; i < lf.grad.size(); ++i) {
        g.deltas[i] = w.fine * lf.grad[i];
      }
    }
  }
  out.terms.total = out.terms.cls + out.terms.conf + out.terms.coarse + out.terms.fine;
  return out;
}

FitState initialize_state(const PointCloud & cloud, const FitConfig & config, int class_count)
{
  config.validate();
  if (cloud.size() == 0) {
    throw InvalidInput("fit: scene has no points");
  }
  if (class_count < 1) {
    throw InvalidInput("fit: class_count must be at least 1");
  }
  const std::size_t n = cloud.size();
  const std::span<const Point3> pts = cloud.positions;

  // Farthest-point sampling from a seeded start.
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> picks{std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)};
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    nearest[i] = distance(pts[i], pts[picks[0]]);
  }
  while (picks.size() < config.proposal_count) {
    const auto far = static_cast<std::size_t>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
    picks.push_back(far);
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], distance(pts[i], pts[far]));
    }
  }

  Point3 centroid;
  for (const Point3 & p : pts) {
    centroid = centroid + p;
  }
  centroid = (1.0 / static_cast<double>(n)) * centroid;
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = distance(pts[i], centroid);
  }
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(n / 2), dist.end());
  const double ray0 = std::max(config.ray_init_scale * dist[n / 2], 1e-3);

  FitState state;
  for (const std::size_t idx : picks) {
    ProposalParams p;
    p.center = pts[idx];
    p.ray_logits.assign(config.grid.sector_count(), std::log(ray0));
    p.deltas.assign(n, 0.0);
    p.class_logits.assign(static_cast<std::size_t>(class_count), 0.0);
    p.conf_logit = 0.0;
    state.proposals.push_back(std::move(p));
  }
  state.matched_gt.assign(state.proposals.size(), -1);
  return state;
}

void rematch(FitState & state, std::span<const InstanceTarget> targets, std::span<const Point3> points,
             const FitConfig & config)
{
  state.matched_gt.assign(state.proposals.size(), -1);
  if (targets.empty()) {
    return;
  }
  std::vector<ProposalEstimate> estimates;
  estimates.reserve(state.proposals.size());
  for (const auto & p : state.proposals) {
    estimates.push_back(p.estimate());
  }
  const auto columns = duplicate_gt(targets.size(), config.gt_duplication);
  const CostMatrix cost = build_cost_matrix(estimates, targets, points, columns, config.fine);
  state.matched_gt = resolve_assignment(hungarian_solve(cost), columns, state.proposals.size());
}

int derive_class_count(const Scene & scene)
{
  int top = 0;
  for (const auto & gt : scene.instances) {
    top = std::max(top, gt.class_id + 1);
  }
  return std::max(top, 1);
}

namespace
{

double step_scale(const FitConfig & config, std::size_t it)
{
  if (!config.cosine_decay || config.iterations == 0) {
    return 1.0;
  }
  return 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(it) / static_cast<double>(config.iterations)));
}

void apply_step(FitState & state, const TotalLoss & loss, const FitConfig & config, double scale)
{
  const StepSizes & lr = config.learning_rate;
  for (std::size_t k = 0; k < state.proposals.size(); ++k) {
    ProposalParams & p = state.proposals[k];
    const ProposalParams & g = loss.grad[k];
    p.center = p.center - (scale * lr.center) * g.center;
    for (std::size_t s = 0; s < p.ray_logits.size(); ++s) {
      p.ray_logits[s] -= scale * lr.ray * g.ray_logits[s];
    }
    if (config.train_deltas) {
      for (std::size_t i = 0; i < p.deltas.size(); ++i) {
        p.deltas[i] -= scale * lr.delta * g.deltas[i];
      }
    }
    for (std::size_t c = 0; c < p.class_logits.size(); ++c) {
      p.class_logits[c] -= scale * lr.cls * g.class_logits[c];
    }
    p.conf_logit -= scale * lr.conf * g.conf_logit;
  }
}

}  // namespace

FitResult fit_scene(const Scene & scene, const FitConfig & config)
{
  config.validate();
  scene.cloud.validate();
  validate_instances(scene.instances, scene.cloud.size());
  const int class_count = config.class_count > 0 ? config.class_count : derive_class_count(scene);
  for (const auto & gt : scene.instances) {
    if (gt.class_id < 0 || gt.class_id >= class_count) {
      throw InvalidInput("fit: instance " + std::to_string(gt.instance_id) + " has class " +
                         std::to_string(gt.class_id) + " outside class_count " + std::to_string(class_count));
    }
  }
  const std::span<const Point3> points = scene.cloud.positions;
  const std::vector<InstanceTarget> targets = make_targets(scene.cloud, scene.instances, config.grid);

  FitState state = initialize_state(scene.cloud, config, class_count);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    if (it % config.rematch_interval == 0) {
      rematch(state, targets, points, config);
    }
    const DetachedState detached = detach(state, targets, points, config.grid);
    const TotalLoss loss = total_loss(state, detached, targets, config);
    if (!std::isfinite(loss.terms.total)) {
      throw Divergence("non-finite total loss", it);
    }
    state.loss_history.push_back(loss.terms.total);
    apply_step(state, loss, config, step_scale(config, it));
  }

  FitResult result;
  result.class_count = class_count;
  result.loss_history = state.loss_history;
  std::vector<ScoredMask> scored;
  for (const ProposalParams & p : state.proposals) {
    Proposal prop{RadialPolygon{p.center, p.rays(), config.grid}, p.deltas, p.predicted_class(), p.confidence()};
    const PolarFrame frame = make_polar_frame(points, p.center, config.grid);
    BinaryMask mask = assemble_mask(frame, prop.deltas, prop.polygon.rays);
    scored.push_back({mask, prop.class_id, prop.confidence});
    result.masks.push_back(std::move(mask));
    result.proposals.push_back(std::move(prop));
  }
  result.kept = nms(scored, config.nms);

  std::vector<ScoredMask> predictions;
  for (const std::size_t k : result.kept) {
    predictions.push_back(scored[k]);
  }
  std::vector<GtMask> gts;
  for (const auto & gt : scene.instances) {
    gts.push_back({mask_of(gt, scene.cloud.size()), gt.class_id});
  }
  std::vector<int> classes(static_cast<std::size_t>(class_count));
  std::iota(classes.begin(), classes.end(), 0);
  result.eval = evaluate(predictions, gts, classes);

  for (const auto & gt : gts) {
    double best = 0.0;
    for (const auto & pred : predictions) {
      best = std::max(best, mask_iou(pred.mask, gt.mask));
    }
    result.best_iou.push_back(best);
  }
  if (!result.best_iou.empty()) {
    result.mean_best_iou = std::accumulate(result.best_iou.begin(), result.best_iou.end(), 0.0) /
                           static_cast<double>(result.best_iou.size());
  }
  return result;
}

std::vector<AblationVariant> component_variants(const SectorGrid & grid)
{
  return {
    {"rid_only", grid, false, false, false},
    {"rid_mc", grid, true, false, true},
    {"rid_sc", grid, false, true, true},
    {"full", grid, true, true, true},
  };
}

std::vector<AblationVariant> grid_variants(int from, int to)
{
  std::vector<AblationVariant> out;
  for (int n = from; n <= to; ++n) {
    out.push_back({"grid_" + std::to_string(n) + "x" + std::to_string(n), SectorGrid{n, n}, true, true, true});
  }
  return out;
}

std::vector<AblationRow> ablation_run(const std::vector<Scene> & scenes, const FitConfig & base,
                                      const std::vector<AblationVariant> & variants)
{
  std::vector<AblationRow> rows;
  for (const AblationVariant & v : variants) {
    FitConfig cfg = base;
    cfg.grid = v.grid;
    cfg.fine.use_misclassification = v.use_misclassification;
    cfg.fine.use_cohesion = v.use_cohesion;
    cfg.train_deltas = v.train_deltas;
    cfg.threads = 1;

    std::vector<FitResult> results(scenes.size());
    parallel_for(scenes.size(), base.threads, [&](std::size_t i) { results[i] = fit_scene(scenes[i], cfg); });

    AblationRow row;
    row.variant = v;
    row.scenes = scenes.size();
    for (const auto & r : results) {
      row.mean_iou += r.mean_best_iou;
      row.mean_ap += r.eval.ap;
      row.mean_ap50 += r.eval.ap50;
    }
    if (!scenes.empty()) {
      const double inv = 1.0 / static_cast<double>(scenes.size());
      row.mean_iou *= inv;
      row.mean_ap *= inv;
      row.mean_ap50 *= inv;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace radseg
