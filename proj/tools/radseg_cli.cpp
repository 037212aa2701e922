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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "radseg/error.hpp"
#include "radseg/fitter.hpp"
#include "radseg/gradcheck.hpp"
#include "radseg/json_io.hpp"
#include "radseg/radial.hpp"
#include "radseg/rle.hpp"
#include "radseg/scene_io.hpp"
#include "radseg/synth.hpp"

namespace
{

using radseg::Json;
using Clock = std::chrono::steady_clock;

struct CommonFlags
{
  std::string grid;
  std::string lambdas;
  double conf_threshold = -1.0;
  double nms_iou = -1.0;
  long long seed = -1;
  unsigned threads = 0;
  bool timings = false;
};

std::vector<double> parse_list(const std::string & text, std::size_t expected, const char * flag)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception &) {
      throw radseg::InvalidInput(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != expected) {
    throw radseg::InvalidInput(std::string(flag) + ": expected " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

radseg::SectorGrid parse_grid(const std::string & text)
{
  const auto v = parse_list(text, 2, "--grid");
  radseg::SectorGrid g{static_cast<int>(v[0]), static_cast<int>(v[1])};
  if (static_cast<double>(g.n_theta) != v[0] || static_cast<double>(g.n_phi) != v[1]) {
    throw radseg::InvalidInput("--grid: bin counts must be integers");
  }
  g.validate();
  return g;
}

void add_common(CLI::App * cmd, CommonFlags & f, bool fit_flags)
{
  cmd->add_option("--grid", f.grid, "Sector grid as N_THETA,N_PHI (default 5,5)");
  cmd->add_option("--seed", f.seed, "RNG seed override");
  cmd->add_flag("--timings", f.timings, "Include wall-clock timings in the report (makes it non-reproducible)");
  if (fit_flags) {
    cmd->add_option("--conf-threshold", f.conf_threshold, "NMS confidence threshold (default 0.2)");
    cmd->add_option("--nms-iou", f.nms_iou, "NMS mask IoU threshold (default 0.5)");
    cmd->add_option("--lambda", f.lambdas, "Loss weights cls,conf,coarse,fine (default 0.5,0.5,1,1)");
    cmd->add_option("--threads", f.threads, "Worker thread cap; ablate fits scenes in parallel");
  }
}

radseg::FitConfig load_fit_config(const std::string & path, const CommonFlags & f)
{
  radseg::FitConfig cfg;
  if (!path.empty()) {
    cfg = radseg::fit_config_from_json(radseg::read_json_file(path));
  }
  if (!f.grid.empty()) {
    cfg.grid = parse_grid(f.grid);
  }
  if (!f.lambdas.empty()) {
    const auto l = parse_list(f.lambdas, 4, "--lambda");
    cfg.lambdas = {l[0], l[1], l[2], l[3]};
  }
  if (f.conf_threshold >= 0.0) {
    cfg.nms.conf_threshold = f.conf_threshold;
  }
  if (f.nms_iou >= 0.0) {
    cfg.nms.iou_threshold = f.nms_iou;
  }
  if (f.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(f.seed);
  }
  if (f.threads > 0) {
    cfg.threads = f.threads;
  }
  cfg.validate();
  return cfg;
}

radseg::SceneSpec load_scene_spec(const std::string & path, const CommonFlags & f)
{
  radseg::SceneSpec spec;
  if (!path.empty()) {
    spec = radseg::scene_spec_from_json(radseg::read_json_file(path));
  }
  if (f.seed >= 0) {
    spec.seed = static_cast<std::uint64_t>(f.seed);
  }
  spec.validate();
  return spec;
}

void emit(const Json & value, const std::string & out_path)
{
  if (out_path.empty()) {
    std::cout << radseg::dump_json(value);
  } else {
    radseg::write_json_file(out_path, value);
  }
}

void write_text(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw radseg::InvalidInput("cannot open '" + path + "' for writing");
  }
  out << text;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

radseg::Scene load_scene(const std::string & path)
{
  radseg::Scene scene;
  scene.cloud = radseg::read_scene_file(path);
  scene.instances = radseg::instances_from_labels(scene.cloud);
  return scene;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"radseg: radial-polygon instance masks for point clouds"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string spec_path;
  std::string out_path;
  auto * synth = app.add_subcommand("synth", "Generate a labeled synthetic scene");
  synth->add_option("--spec", spec_path, "Scene spec JSON (defaults when omitted)");
  synth->add_option("--out", out_path, "Output scene file")->required();
  synth->add_option("--seed", flags.seed, "RNG seed override");

  std::string scene_path;
  std::string config_path;
  std::string out_dir;
  auto * fit = app.add_subcommand("fit", "Fit proposals to a scene by gradient descent");
  fit->add_option("--scene", scene_path, "Scene file")->required()->check(CLI::ExistingFile);
  fit->add_option("--config", config_path, "Fit config JSON")->check(CLI::ExistingFile);
  fit->add_option("--out-dir", out_dir, "Directory for predictions.json and report.json")->required();
  add_common(fit, flags, true);

  std::string predictions_path;
  std::string csv_path;
  int class_count = 0;
  auto * eval = app.add_subcommand("eval", "Evaluate predictions against a labeled scene");
  eval->add_option("--predictions", predictions_path, "Predictions JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--scene", scene_path, "Scene file")->required()->check(CLI::ExistingFile);
  eval->add_option("--classes", class_count, "Number of classes (default: derived from labels and predictions)");
  eval->add_option("--out", out_path, "Output JSON (stdout when omitted)");
  eval->add_option("--csv", csv_path, "Also write a per-class AP table as CSV");

  std::size_t scene_count = 1;
  std::string grid_sweep = "1,1:2,2:3,3:4,4:5,5";
  auto * bench = app.add_subcommand("bench-tightness", "Compare radial polygons against AABBs on synthetic scenes");
  bench->add_option("--spec", spec_path, "Scene spec JSON");
  bench->add_option("--scenes", scene_count, "Number of scenes (seeds spec.seed, spec.seed+1, ...)");
  bench->add_option("--grids", grid_sweep, "Grids to sweep, e.g. 1,1:3,3:5,5");
  bench->add_option("--out", out_path, "Output JSON (stdout when omitted)");
  add_common(bench, flags, false);

  std::uint64_t gc_seed = 1;
  std::size_t trials = 1000;
  auto * gradcheck = app.add_subcommand("gradcheck", "Verify analytic gradients against central differences");
  gradcheck->add_option("--seed", gc_seed, "RNG seed");
  gradcheck->add_option("--trials", trials, "Random configurations per loss");
  gradcheck->add_option("--out", out_path, "Output JSON (stdout when omitted)");

  std::vector<std::string> spec_paths;
  std::string ablate_grids;
  auto * ablate = app.add_subcommand("ablate", "Run component or grid ablations over synthetic scenes");
  ablate->add_option("--spec", spec_paths, "Scene spec JSON, repeatable");
  ablate->add_option("--scenes", scene_count, "Scenes per spec (seeds spec.seed, spec.seed+1, ...)");
  ablate->add_option("--config", config_path, "Fit config JSON")->check(CLI::ExistingFile);
  ablate->add_option("--grid-sweep", ablate_grids, "Also run the full model on n/n grids FROM,TO");
  ablate->add_option("--out", out_path, "Output JSON (stdout when omitted)");
  ablate->add_option("--csv", csv_path, "Also write the table as CSV");
  add_common(ablate, flags, true);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = Clock::now();
    if (*synth) {
      const radseg::SceneSpec spec = load_scene_spec(spec_path, flags);
      const radseg::Scene scene = radseg::generate_scene(spec);
      radseg::write_scene_file(out_path, scene.cloud);
      Json summary{{"command", "synth"},
                   {"spec", radseg::to_json(spec)},
                   {"points", scene.cloud.size()},
                   {"instances", scene.instances.size()},
                   {"output", out_path}};
      std::cout << radseg::dump_json(summary);
    } else if (*fit) {
      const radseg::FitConfig cfg = load_fit_config(config_path, flags);
      const radseg::Scene scene = load_scene(scene_path);
      const radseg::FitResult result = radseg::fit_scene(scene, cfg);

      radseg::PredictionSet preds{scene.cloud.size(), {}};
      for (const std::size_t k : result.kept) {
        const auto & p = result.proposals[k];
        preds.predictions.push_back({result.masks[k], p.class_id, p.confidence});
      }
      const std::string pred_out = out_dir + "/predictions.json";
      const std::string report_out = out_dir + "/report.json";
      radseg::write_json_file(pred_out, radseg::to_json(preds));

      Json proposals = Json::array();
      for (std::size_t k = 0; k < result.proposals.size(); ++k) {
        const auto & p = result.proposals[k];
        proposals.push_back({{"center", {p.polygon.center.x, p.polygon.center.y, p.polygon.center.z}},
                             {"rays", p.polygon.rays},
                             {"class_id", p.class_id},
                             {"confidence", p.confidence},
                             {"mask_points", result.masks[k].count()}});
      }
      Json report{{"command", "fit"},
                  {"scene", scene_path},
                  {"config", radseg::to_json(cfg)},
                  {"class_count", result.class_count},
                  {"outputs", {{"predictions", pred_out}, {"report", report_out}}},
                  {"loss_history", result.loss_history},
                  {"proposals", proposals},
                  {"kept", result.kept},
                  {"best_iou", result.best_iou},
                  {"mean_best_iou", result.mean_best_iou},
                  {"eval", radseg::to_json(result.eval)}};
      if (flags.timings) {
        report["timings"] = {{"total_seconds", seconds_since(t0)}};
      }
      radseg::write_json_file(report_out, report);
      std::cout << radseg::dump_json(Json{{"mean_best_iou", result.mean_best_iou},
                                          {"ap", result.eval.ap},
                                          {"kept", result.kept.size()},
                                          {"predictions", pred_out},
                                          {"report", report_out}});
    } else if (*eval) {
      const radseg::Scene scene = load_scene(scene_path);
      const radseg::PredictionSet preds = radseg::predictions_from_json(radseg::read_json_file(predictions_path));
      if (preds.point_count != scene.cloud.size()) {
        throw radseg::InvalidInput("predictions cover " + std::to_string(preds.point_count) +
                                   " points but the scene has " + std::to_string(scene.cloud.size()));
      }
      std::vector<radseg::GtMask> gts;
      int top = 0;
      for (const auto & gt : scene.instances) {
        gts.push_back({radseg::mask_of(gt, scene.cloud.size()), gt.class_id});
        top = std::max(top, gt.class_id + 1);
      }
      if (class_count <= 0) {
        for (const auto & p : preds.predictions) {
          top = std::max(top, p.class_id + 1);
        }
        class_count = std::max(top, 1);
      }
      std::vector<int> classes(static_cast<std::size_t>(class_count));
      std::iota(classes.begin(), classes.end(), 0);
      const radseg::EvalResult result = radseg::evaluate(preds.predictions, gts, classes);
      emit(radseg::to_json(result), out_path);
      if (!csv_path.empty()) {
        write_text(csv_path, radseg::eval_to_csv(result));
      }
    } else if (*bench) {
      const radseg::SceneSpec spec = load_scene_spec(spec_path, flags);
      const radseg::SectorGrid main_grid = flags.grid.empty() ? radseg::SectorGrid{5, 5} : parse_grid(flags.grid);
      std::vector<radseg::SectorGrid> grids;
      std::stringstream ss(grid_sweep);
      std::string item;
      while (std::getline(ss, item, ':')) {
        grids.push_back(parse_grid(item));
      }
      std::vector<radseg::Scene> scenes;
      for (std::size_t i = 0; i < scene_count; ++i) {
        radseg::SceneSpec s = spec;
        s.seed = spec.seed + i;
        scenes.push_back(radseg::generate_scene(s));
      }
      auto collect = [&](const radseg::SectorGrid & g) {
        std::vector<radseg::TightnessEntry> all;
        for (const auto & scene : scenes) {
          const auto part = radseg::tightness_report(scene.cloud, scene.instances, g);
          all.insert(all.end(), part.begin(), part.end());
        }
        return all;
      };
      Json sweep = Json::array();
      for (const auto & g : grids) {
        sweep.push_back({{"grid", radseg::to_json(g)}, {"summary", radseg::to_json(radseg::summarize_tightness(collect(g)))}});
      }
      const auto entries = collect(main_grid);
      Json report{{"command", "bench-tightness"},
                  {"spec", radseg::to_json(spec)},
                  {"scenes", scene_count},
                  {"grid", radseg::to_json(main_grid)},
                  {"summary", radseg::to_json(radseg::summarize_tightness(entries))},
                  {"instances", radseg::to_json(entries)},
                  {"sweep", sweep}};
      if (flags.timings) {
        report["timings"] = {{"total_seconds", seconds_since(t0)}};
      }
      emit(report, out_path);
    } else if (*gradcheck) {
      radseg::GradcheckOptions opts;
      opts.seed = gc_seed;
      opts.trials = trials;
      const radseg::GradcheckReport report = radseg::run_gradcheck(opts);
      emit(radseg::to_json(report), out_path);
      return report.pass ? 0 : 1;
    } else if (*ablate) {
      const radseg::FitConfig cfg = load_fit_config(config_path, flags);
      if (spec_paths.empty()) {
        spec_paths.emplace_back();
      }
      std::vector<radseg::Scene> scenes;
      Json specs = Json::array();
      for (const auto & path : spec_paths) {
        const radseg::SceneSpec spec = load_scene_spec(path, flags);
        specs.push_back(radseg::to_json(spec));
        for (std::size_t i = 0; i < scene_count; ++i) {
          radseg::SceneSpec s = spec;
          s.seed = spec.seed + i;
          scenes.push_back(radseg::generate_scene(s));
        }
      }
      auto variants = radseg::component_variants(cfg.grid);
      if (!ablate_grids.empty()) {
        const auto range = parse_list(ablate_grids, 2, "--grid-sweep");
        const auto more = radseg::grid_variants(static_cast<int>(range[0]), static_cast<int>(range[1]));
        variants.insert(variants.end(), more.begin(), more.end());
      }
      const auto rows = radseg::ablation_run(scenes, cfg, variants);
      Json report{{"command", "ablate"},
                  {"config", radseg::to_json(cfg)},
                  {"specs", specs},
                  {"scenes_per_spec", scene_count},
                  {"rows", radseg::to_json(rows)}};
      if (flags.timings) {
        report["timings"] = {{"total_seconds", seconds_since(t0)}};
      }
      emit(report, out_path);
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "name,grid,misclassification,cohesion,train_deltas,scenes,mean_iou,mean_ap,mean_ap50\n";
        for (const auto & r : rows) {
          csv << r.variant.name << ',' << r.variant.grid.n_theta << '/' << r.variant.grid.n_phi << ','
              << r.variant.use_misclassification << ',' << r.variant.use_cohesion << ',' << r.variant.train_deltas
              << ',' << r.scenes << ',' << radseg::format_double(r.mean_iou) << ','
              << radseg::format_double(r.mean_ap) << ',' << radseg::format_double(r.mean_ap50) << '\n';
        }
        write_text(csv_path, csv.str());
      }
    }
  } catch (const radseg::ParseError & e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
