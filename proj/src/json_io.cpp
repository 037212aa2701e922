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

#include "radseg/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "radseg/error.hpp"
#include "radseg/gradcheck.hpp"
#include "radseg/scene_io.hpp"

namespace radseg
{

namespace
{

std::size_t line_of_offset(const std::string & text, std::size_t offset)
{
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(offset, text.size()));
  return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

// Reads typed fields out of a JSON object, accumulating problems instead of stopping at the first.
class FieldReader
{
public:
  FieldReader(const Json & obj, std::string prefix, std::vector<std::string> & errors)
  : obj_(obj), prefix_(std::move(prefix)), errors_(errors)
  {
    if (!obj_.is_object()) {
      errors_.push_back((prefix_.empty() ? std::string("<root>") : prefix_) + " (expected an object)");
    }
  }

  bool ok() const { return obj_.is_object(); }

  template <typename T>
  void read(const char * key, T & out)
  {
    seen_.insert(key);
    if (!ok() || !obj_.contains(key)) {
      return;
    }
    const Json & v = obj_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) {
          throw std::invalid_argument("bool");
        }
      } else if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) {
          throw std::invalid_argument("unsigned");
        }
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) {
          throw std::invalid_argument("integer");
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
          throw std::invalid_argument("number");
        }
      }
      out = v.get<T>();
    } catch (const std::exception & e) {
      errors_.push_back(name(key) + " (expected " + std::string(e.what()) + ")");
    }
  }

  const Json * child(const char * key)
  {
    seen_.insert(key);
    if (!ok() || !obj_.contains(key)) {
      return nullptr;
    }
    return &obj_.at(key);
  }

  void error(const char * key, const std::string & what) { errors_.push_back(name(key) + " (" + what + ")"); }

  void reject_unknown()
  {
    if (!ok()) {
      return;
    }
    for (const auto & item : obj_.items()) {
      if (seen_.count(item.key()) == 0) {
        errors_.push_back(name(item.key().c_str()) + " (unknown field)");
      }
    }
  }

  std::string name(const char * key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

private:
  const Json & obj_;
  std::string prefix_;
  std::vector<std::string> & errors_;
  std::set<std::string> seen_;
};

void throw_if_errors(const std::vector<std::string> & errors, const std::string & what)
{
  if (errors.empty()) {
    return;
  }
  std::string msg = "invalid " + what + " fields:";
  for (const auto & e : errors) {
    msg += "\n  " + e;
  }
  throw InvalidInput(msg);
}

std::string sign_name(MisclassSign s) { return s == MisclassSign::kCorrective ? "corrective" : "inverted"; }

}  // namespace

Json parse_json(const std::string & text)
{
  try {
    return Json::parse(text);
  } catch (const Json::parse_error & e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

Json read_json_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot open JSON file '" + path + "'");
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json(text);
}

std::string dump_json(const Json & value) { return value.dump(2) + "\n"; }

void write_json_file(const std::string & path, const Json & value)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInput("cannot open '" + path + "' for writing");
  }
  out << dump_json(value);
}

Json to_json(const SectorGrid & grid) { return Json::array({grid.n_theta, grid.n_phi}); }

SectorGrid grid_from_json(const Json & value)
{
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() || !value[1].is_number_integer()) {
    throw InvalidInput("grid must be a two-element integer array [n_theta, n_phi]");
  }
  SectorGrid g{value[0].get<int>(), value[1].get<int>()};
  g.validate();
  return g;
}

FitConfig fit_config_from_json(const Json & value, FitConfig base)
{
  std::vector<std::string> errors;
  FieldReader r(value, "", errors);
  FitConfig c = std::move(base);
  r.read("proposal_count", c.proposal_count);
  if (const Json * g = r.child("grid")) {
    try {
      c.grid = grid_from_json(*g);
    } catch (const InvalidInput & e) {
      r.error("grid", e.what());
    }
  }
  if (const Json * l = r.child("lambdas")) {
    if (l->is_array() && l->size() == 4 && std::all_of(l->begin(), l->end(), [](const Json & x) { return x.is_number(); })) {
      c.lambdas = {(*l)[0].get<double>(), (*l)[1].get<double>(), (*l)[2].get<double>(), (*l)[3].get<double>()};
    } else {
      r.error("lambdas", "expected four numbers [cls, conf, coarse, fine]");
    }
  }
  if (const Json * lr = r.child("learning_rate")) {
    FieldReader s(*lr, "learning_rate", errors);
    s.read("center", c.learning_rate.center);
    s.read("ray", c.learning_rate.ray);
    s.read("delta", c.learning_rate.delta);
    s.read("cls", c.learning_rate.cls);
    s.read("conf", c.learning_rate.conf);
    s.reject_unknown();
  }
  r.read("iterations", c.iterations);
  r.read("rematch_interval", c.rematch_interval);
  r.read("cosine_decay", c.cosine_decay);
  r.read("seed", c.seed);
  r.read("gt_duplication", c.gt_duplication);
  r.read("ray_init_scale", c.ray_init_scale);
  if (const Json * f = r.child("fine")) {
    FieldReader s(*f, "fine", errors);
    s.read("misclassification", c.fine.use_misclassification);
    s.read("cohesion", c.fine.use_cohesion);
    std::string sign = sign_name(c.fine.sign);
    s.read("sign", sign);
    if (sign == "corrective") {
      c.fine.sign = MisclassSign::kCorrective;
    } else if (sign == "inverted") {
      c.fine.sign = MisclassSign::kInverted;
    } else {
      s.error("sign", "expected \"corrective\" or \"inverted\"");
    }
    s.reject_unknown();
  }
  r.read("train_deltas", c.train_deltas);
  if (const Json * n = r.child("nms")) {
    FieldReader s(*n, "nms", errors);
    s.read("conf_threshold", c.nms.conf_threshold);
    s.read("iou_threshold", c.nms.iou_threshold);
    s.read("class_aware", c.nms.class_aware);
    s.reject_unknown();
  }
  r.read("class_count", c.class_count);
  r.read("threads", c.threads);
  r.reject_unknown();
  throw_if_errors(errors, "fit config");
  c.validate();
  return c;
}

Json to_json(const FitConfig & c)
{
  return Json{
    {"proposal_count", c.proposal_count},
    {"grid", to_json(c.grid)},
    {"lambdas", Json::array({c.lambdas.cls, c.lambdas.conf, c.lambdas.coarse, c.lambdas.fine})},
    {"learning_rate",
     {{"center", c.learning_rate.center},
      {"ray", c.learning_rate.ray},
      {"delta", c.learning_rate.delta},
      {"cls", c.learning_rate.cls},
      {"conf", c.learning_rate.conf}}},
    {"iterations", c.iterations},
    {"rematch_interval", c.rematch_interval},
    {"cosine_decay", c.cosine_decay},
    {"seed", c.seed},
    {"gt_duplication", c.gt_duplication},
    {"ray_init_scale", c.ray_init_scale},
    {"fine",
     {{"misclassification", c.fine.use_misclassification},
      {"cohesion", c.fine.use_cohesion},
      {"sign", sign_name(c.fine.sign)}}},
    {"train_deltas", c.train_deltas},
    {"nms",
     {{"conf_threshold", c.nms.conf_threshold},
      {"iou_threshold", c.nms.iou_threshold},
      {"class_aware", c.nms.class_aware}}},
    {"class_count", c.class_count},
    {"threads", c.threads},
  };
}

SceneSpec scene_spec_from_json(const Json & value, SceneSpec base)
{
  std::vector<std::string> errors;
  FieldReader r(value, "", errors);
  SceneSpec s = std::move(base);
  r.read("seed", s.seed);
  r.read("instance_count", s.instance_count);
  r.read("points_per_instance", s.points_per_instance);
  r.read("background_points", s.background_points);
  if (const Json * shapes = r.child("shapes")) {
    if (!shapes->is_array() || shapes->empty()) {
      r.error("shapes", "expected a non-empty array of shape names");
    } else {
      s.shapes.clear();
      for (const auto & item : *shapes) {
        try {
          s.shapes.push_back(shape_family_from_string(item.is_string() ? item.get<std::string>() : ""));
        } catch (const InvalidInput & e) {
          r.error("shapes", e.what());
        }
      }
    }
  }
  r.read("extent", s.extent);
  r.read("noise_sigma", s.noise_sigma);
  r.read("min_size", s.min_size);
  r.read("max_size", s.max_size);
  r.read("class_count", s.class_count);
  r.read("with_color", s.with_color);
  r.reject_unknown();
  throw_if_errors(errors, "scene spec");
  s.validate();
  return s;
}

Json to_json(const SceneSpec & s)
{
  Json shapes = Json::array();
  for (const auto f : s.shapes) {
    shapes.push_back(to_string(f));
  }
  return Json{{"seed", s.seed},
              {"instance_count", s.instance_count},
              {"points_per_instance", s.points_per_instance},
              {"background_points", s.background_points},
              {"shapes", shapes},
              {"extent", s.extent},
              {"noise_sigma", s.noise_sigma},
              {"min_size", s.min_size},
              {"max_size", s.max_size},
              {"class_count", s.class_count},
              {"with_color", s.with_color}};
}

Json to_json(const RleMask & rle) { return Json{{"size", rle.size}, {"counts", rle.counts}}; }

RleMask rle_from_json(const Json & value)
{
  if (!value.is_object() || !value.contains("size") || !value.contains("counts") ||
      !value.at("size").is_number_unsigned() || !value.at("counts").is_array()) {
    throw InvalidInput("mask must be an object with unsigned 'size' and array 'counts'");
  }
  RleMask rle;
  rle.size = value.at("size").get<std::size_t>();
  for (const auto & c : value.at("counts")) {
    if (!c.is_number_unsigned()) {
      throw InvalidInput("mask counts must be non-negative integers");
    }
    rle.counts.push_back(c.get<std::uint64_t>());
  }
  return rle;
}

Json to_json(const EvalResult & result)
{
  Json per_class = Json::array();
  for (const auto & m : result.per_class) {
    Json row{{"class_id", m.class_id}, {"gt_count", m.gt_count}, {"prediction_count", m.prediction_count}};
    if (m.gt_count > 0) {
      row["ap"] = m.ap;
      row["ap50"] = m.ap50;
      row["ap25"] = m.ap25;
      row["precision50"] = m.precision50;
      row["recall50"] = m.recall50;
    } else {
      for (const char * k : {"ap", "ap50", "ap25", "precision50", "recall50"}) {
        row[k] = nullptr;
      }
    }
    per_class.push_back(row);
  }
  return Json{{"ap", result.ap},         {"ap50", result.ap50},       {"ap25", result.ap25},
              {"mprec50", result.mprec50}, {"mrec50", result.mrec50}, {"per_class", per_class}};
}

std::string eval_to_csv(const EvalResult & result)
{
  std::ostringstream out;
  out << "metric,mean";
  for (const auto & m : result.per_class) {
    out << ",class_" << m.class_id;
  }
  out << '\n';
  auto row = [&](const char * name, double mean, double ClassMetrics::*field) {
    out << name << ',' << format_double(mean);
    for (const auto & m : result.per_class) {
      out << ',';
      if (m.gt_count > 0) {
        out << format_double(m.*field);
      }
    }
    out << '\n';
  };
  row("AP", result.ap, &ClassMetrics::ap);
  row("AP50", result.ap50, &ClassMetrics::ap50);
  row("AP25", result.ap25, &ClassMetrics::ap25);
  return out.str();
}

Json to_json(const PredictionSet & set)
{
  Json preds = Json::array();
  for (const auto & p : set.predictions) {
    preds.push_back({{"class_id", p.class_id}, {"confidence", p.confidence}, {"mask", to_json(rle_encode(p.mask))}});
  }
  return Json{{"format", "radseg-predictions"}, {"version", 1}, {"point_count", set.point_count}, {"predictions", preds}};
}

PredictionSet predictions_from_json(const Json & value)
{
  if (!value.is_object() || value.value("format", std::string()) != "radseg-predictions") {
    throw InvalidInput("predictions: missing \"format\": \"radseg-predictions\"");
  }
  if (value.value("version", 0) != 1) {
    throw InvalidInput("predictions: unsupported version");
  }
  if (!value.contains("point_count") || !value.at("point_count").is_number_unsigned() ||
      !value.contains("predictions") || !value.at("predictions").is_array()) {
    throw InvalidInput("predictions: need unsigned 'point_count' and array 'predictions'");
  }
  PredictionSet set;
  set.point_count = value.at("point_count").get<std::size_t>();
  std::size_t i = 0;
  for (const auto & p : value.at("predictions")) {
    const std::string where = "predictions[" + std::to_string(i++) + "]";
    if (!p.is_object() || !p.contains("class_id") || !p.at("class_id").is_number_integer() ||
        !p.contains("confidence") || !p.at("confidence").is_number() || !p.contains("mask")) {
      throw InvalidInput(where + ": need integer class_id, numeric confidence and mask");
    }
    ScoredMask m;
    m.class_id = p.at("class_id").get<int>();
    m.confidence = p.at("confidence").get<double>();
    if (!(m.confidence >= 0.0 && m.confidence <= 1.0)) {
      throw InvalidInput(where + ": confidence outside [0, 1]");
    }
    m.mask = rle_decode(rle_from_json(p.at("mask")));
    if (m.mask.size() != set.point_count) {
      throw InvalidInput(where + ": mask size does not match point_count");
    }
    set.predictions.push_back(std::move(m));
  }
  return set;
}

Json to_json(const std::vector<TightnessEntry> & entries)
{
  Json out = Json::array();
  for (const auto & e : entries) {
    out.push_back({{"instance_id", e.instance_id},
                   {"class_id", e.class_id},
                   {"instance_points", e.instance_points},
                   {"radial_enclosed_other", e.radial_enclosed_other},
                   {"aabb_enclosed_other", e.aabb_enclosed_other},
                   {"radial_recall", e.radial_recall},
                   {"aabb_recall", e.aabb_recall},
                   {"radial_precision", e.radial_precision()},
                   {"aabb_precision", e.aabb_precision()}});
  }
  return out;
}

Json to_json(const std::vector<AblationRow> & rows)
{
  Json out = Json::array();
  for (const auto & r : rows) {
    out.push_back({{"name", r.variant.name},
                   {"grid", to_json(r.variant.grid)},
                   {"misclassification", r.variant.use_misclassification},
                   {"cohesion", r.variant.use_cohesion},
                   {"train_deltas", r.variant.train_deltas},
                   {"scenes", r.scenes},
                   {"mean_iou", r.mean_iou},
                   {"mean_ap", r.mean_ap},
                   {"mean_ap50", r.mean_ap50}});
  }
  return out;
}

Json to_json(const TightnessSummary & s)
{
  return Json{{"instances", s.instances},
              {"fraction_radial_fewer", s.fraction_radial_fewer},
              {"mean_radial_precision", s.mean_radial_precision},
              {"mean_aabb_precision", s.mean_aabb_precision},
              {"min_radial_recall", s.min_radial_recall},
              {"min_aabb_recall", s.min_aabb_recall},
              {"saved_points_quantiles", s.saved_points_quantiles}};
}

Json to_json(const GradcheckReport & report)
{
  Json checks = Json::array();
  for (const auto & e : report.entries) {
    checks.push_back({{"name", e.name},
                      {"configurations", e.configurations},
                      {"components", e.components},
                      {"max_relative_error", e.max_relative_error},
                      {"tolerance", e.tolerance},
                      {"pass", e.pass}});
  }
  return Json{{"seed", report.options.seed},
              {"trials", report.options.trials},
              {"step", report.options.step},
              {"checks", checks},
              {"result", report.pass ? "pass" : "fail"}};
}

}  // namespace radseg
