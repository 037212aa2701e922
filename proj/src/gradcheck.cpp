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

#include "radseg/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "radseg/fitter.hpp"
#include "radseg/migration.hpp"
#include "radseg/synth.hpp"

namespace radseg
{

double relative_error(double analytic, double numeric)
{
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
}

namespace
{

using Rng = std::mt19937_64;

double uni(Rng & rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Worst relative error between `analytic` and central differences of f over the parameters.
double check_params(std::vector<double> & params, const std::vector<double> & analytic,
                    const std::function<double()> & f, double h, std::size_t & components)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = f();
    params[i] = saved - h;
    const double down = f();
    params[i] = saved;
    worst = std::max(worst, relative_error(analytic[i], (up - down) / (2.0 * h)));
    ++components;
  }
  return worst;
}

// A frame of `n` points with radii and sectors drawn directly.
PolarFrame random_frame(Rng & rng, std::size_t n, const SectorGrid & grid)
{
  PolarFrame f;
  f.grid = grid;
  f.radii.resize(n);
  f.sectors.resize(n);
  std::uniform_int_distribution<std::size_t> sector(0, grid.sector_count() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    f.radii[i] = uni(rng, 0.0, 2.0);
    f.sectors[i] = sector(rng);
  }
  return f;
}

SectorGrid random_grid(Rng & rng)
{
  std::uniform_int_distribution<int> d(1, 6);
  return {d(rng), d(rng)};
}

// Deltas with r + delta - ray bounded away from 0 and within [-3, 3].
std::vector<double> margin_deltas(Rng & rng, const PolarFrame & f, const std::vector<double> & rays)
{
  std::vector<double> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double side = uni(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const double x = side * uni(rng, 1e-3, 3.0);
    d[i] = x + rays[f.sectors[i]] - f.radii[i];
  }
  return d;
}

struct MigrationCase
{
  PolarFrame frame;
  std::vector<double> rays;
  std::vector<double> deltas;
  std::vector<std::uint8_t> fg;
};

MigrationCase random_migration_case(Rng & rng)
{
  MigrationCase c;
  const SectorGrid grid = random_grid(rng);
  c.frame = random_frame(rng, std::uniform_int_distribution<std::size_t>(1, 30)(rng), grid);
  c.rays.resize(grid.sector_count());
  for (auto & r : c.rays) {
    r = uni(rng, 0.05, 2.0);
  }
  c.deltas = margin_deltas(rng, c.frame, c.rays);
  c.fg.resize(c.frame.size());
  for (auto & b : c.fg) {
    b = uni(rng, 0.0, 1.0) < 0.5 ? 1 : 0;
  }
  return c;
}

GradcheckEntry entry(const std::string & name, double tol)
{
  GradcheckEntry e;
  e.name = name;
  e.tolerance = tol;
  return e;
}

void finish(GradcheckEntry & e) { e.pass = e.max_relative_error <= e.tolerance; }

}  // namespace

GradcheckReport run_gradcheck(const GradcheckOptions & options)
{
  GradcheckReport report;
  report.options = options;
  Rng rng(options.seed);
  const double h = options.step;

  GradcheckEntry mc = entry("misclassification", options.tolerance);
  GradcheckEntry sc = entry("cohesion", options.tolerance);
  for (std::size_t t = 0; t < options.trials; ++t) {
    MigrationCase c = random_migration_case(rng);
    const PointPartition part = classify_points(c.frame, c.deltas, c.rays, c.fg);
    const LossValue a_mc = misclassification_loss(part, c.frame, c.deltas, c.rays);
    mc.max_relative_error = std::max(mc.max_relative_error, check_params(c.deltas, a_mc.grad, [&] {
      const auto p = classify_points(c.frame, c.deltas, c.rays, c.fg);
      return misclassification_loss(p, c.frame, c.deltas, c.rays).value;
    }, h, mc.components));
    ++mc.configurations;
    const LossValue a_sc = sector_cohesion_loss(part, c.frame, c.deltas);
    sc.max_relative_error = std::max(sc.max_relative_error, check_params(c.deltas, a_sc.grad, [&] {
      const auto p = classify_points(c.frame, c.deltas, c.rays, c.fg);
      return sector_cohesion_loss(p, c.frame, c.deltas).value;
    }, h, sc.components));
    ++sc.configurations;
  }

  GradcheckEntry ray = entry("ray", options.tolerance);
  GradcheckEntry center = entry("center", options.tolerance);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const SectorGrid grid = random_grid(rng);
    RadialPolygon target{{uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1)}, {}, grid};
    RadialPolygon pred = target;
    for (std::size_t s = 0; s < grid.sector_count(); ++s) {
      const double g = uni(rng, kMinRay, 2.0);
      target.rays.push_back(g);
      pred.rays.push_back(std::max(kMinRay, g + (uni(rng, 0, 1) < 0.5 ? -1 : 1) * uni(rng, 1e-3, 1.0)));
      if (std::abs(pred.rays.back() - g) < 1e-3) {
        pred.rays.back() = g + uni(rng, 1e-3, 1.0);
      }
    }
    std::vector<double> c3(3);
    for (auto & v : c3) {
      v = (uni(rng, 0, 1) < 0.5 ? -1 : 1) * uni(rng, 1e-3, 1.0);
    }
    pred.center = target.center + Point3{c3[0], c3[1], c3[2]};
    const CoarseLoss a = coarse_loss(pred, target);
    ray.max_relative_error = std::max(ray.max_relative_error, check_params(pred.rays, a.d_rays, [&] {
      return coarse_loss(pred, target).ray_term;
    }, h, ray.components));
    ++ray.configurations;
    std::vector<double> cp{pred.center.x, pred.center.y, pred.center.z};
    center.max_relative_error = std::max(center.max_relative_error,
                                         check_params(cp, {a.d_center.x, a.d_center.y, a.d_center.z}, [&] {
      RadialPolygon moved = pred;
      moved.center = {cp[0], cp[1], cp[2]};
      return coarse_loss(moved, target).center_term;
    }, h, center.components));
    ++center.configurations;
  }

  GradcheckEntry conf = entry("confidence", options.tolerance);
  GradcheckEntry cls = entry("classification", options.tolerance);
  for (std::size_t t = 0; t < options.trials; ++t) {
    std::vector<double> pc{uni(rng, 0, 1)};
    const double iou = uni(rng, 0, 1);
    conf.max_relative_error = std::max(conf.max_relative_error, check_params(pc, conf_loss(pc[0], iou).grad, [&] {
      return conf_loss(pc[0], iou).value;
    }, h, conf.components));
    ++conf.configurations;
    std::vector<double> logits(std::uniform_int_distribution<std::size_t>(1, 8)(rng));
    for (auto & l : logits) {
      l = uni(rng, -4, 4);
    }
    const int target = std::uniform_int_distribution<int>(0, static_cast<int>(logits.size()) - 1)(rng);
    cls.max_relative_error = std::max(cls.max_relative_error, check_params(logits, cls_loss(logits, target).grad, [&] {
      return cls_loss(logits, target).value;
    }, h, cls.components));
    ++cls.configurations;
  }

  GradcheckEntry total = entry("total_loss", options.total_tolerance);
  for (std::size_t t = 0; t < options.trials; ++t) {
    SceneSpec spec;
    spec.seed = rng();
    spec.instance_count = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    spec.points_per_instance = 24;
    spec.background_points = 24;
    spec.extent = 4.0;
    spec.class_count = 3;
    const Scene scene = generate_scene(spec);
    FitConfig cfg;
    cfg.grid = random_grid(rng);
    cfg.proposal_count = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    cfg.lambdas = {uni(rng, 0.1, 1), uni(rng, 0.1, 1), uni(rng, 0.1, 1), uni(rng, 0.1, 1)};
    const auto targets = make_targets(scene.cloud, scene.instances, cfg.grid);
    FitState state = initialize_state(scene.cloud, cfg, 3);
    for (std::size_t k = 0; k < state.proposals.size(); ++k) {
      ProposalParams & p = state.proposals[k];
      const int g = std::uniform_int_distribution<int>(-1, static_cast<int>(targets.size()) - 1)(rng);
      state.matched_gt[k] = g;
      const InstanceTarget & tg = targets[static_cast<std::size_t>(std::max(g, 0))];
      auto offset = [&] { return (uni(rng, 0, 1) < 0.5 ? -1 : 1) * uni(rng, 1e-3, 0.3); };
      p.center = tg.polygon.center + Point3{offset(), offset(), offset()};
      for (std::size_t s = 0; s < p.ray_logits.size(); ++s) {
        const double goal = tg.polygon.rays[s];
        p.ray_logits[s] = std::log(std::max(goal, 0.05) * uni(rng, 0.5, 1.5));
        if (std::abs(std::exp(p.ray_logits[s]) - goal) < 1e-3) {
          p.ray_logits[s] += 0.01;
        }
      }
      for (auto & l : p.class_logits) {
        l = uni(rng, -3, 3);
      }
      p.conf_logit = uni(rng, -3, 3);
      const PolarFrame frame = make_polar_frame(scene.cloud.positions, p.center, cfg.grid);
      p.deltas = margin_deltas(rng, frame, p.rays());
    }
    const DetachedState detached = detach(state, targets, scene.cloud.positions, cfg.grid);
    const TotalLoss analytic = total_loss(state, detached, targets, cfg);
    auto f = [&] { return total_loss(state, detached, targets, cfg).terms.total; };
    double worst = 0.0;
    for (std::size_t k = 0; k < state.proposals.size(); ++k) {
      ProposalParams & p = state.proposals[k];
      const ProposalParams & g = analytic.grad[k];
      std::vector<double> c3{p.center.x, p.center.y, p.center.z};
      worst = std::max(worst, check_params(c3, {g.center.x, g.center.y, g.center.z}, [&] {
        const Point3 saved = p.center;
        p.center = {c3[0], c3[1], c3[2]};
        const double v = f();
        p.center = saved;
        return v;
      }, h, total.components));
      worst = std::max(worst, check_params(p.ray_logits, g.ray_logits, f, h, total.components));
      worst = std::max(worst, check_params(p.deltas, g.deltas, f, h, total.components));
      worst = std::max(worst, check_params(p.class_logits, g.class_logits, f, h, total.components));
      std::vector<double> q{p.conf_logit};
      worst = std::max(worst, check_params(q, {g.conf_logit}, [&] {
        const double saved = p.conf_logit;
        p.conf_logit = q[0];
        const double v = f();
        p.conf_logit = saved;
        return v;
      }, h, total.components));
    }
    total.max_relative_error = std::max(total.max_relative_error, worst);
    ++total.configurations;
  }

  report.entries = {mc, sc, ray, center, conf, cls, total};
  report.pass = true;
  for (auto & e : report.entries) {
    finish(e);
    report.pass = report.pass && e.pass;
  }
  return report;
}

}  // namespace radseg
