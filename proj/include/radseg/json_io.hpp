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
#include <string>
#include <vector>

#include "json.hpp"
#include "radseg/fitter.hpp"
#include "radseg/metrics.hpp"
#include "radseg/radial.hpp"
#include "radseg/rle.hpp"
#include "radseg/synth.hpp"

namespace radseg
{

using Json = nlohmann::json;

/// Parses a JSON file; syntax errors become ParseError with the offending line.
Json read_json_file(const std::string & path);
Json parse_json(const std::string & text);
void write_json_file(const std::string & path, const Json & value);

/// Deterministic two-space-indented rendering with a trailing newline.
std::string dump_json(const Json & value);

Json to_json(const SectorGrid & grid);
SectorGrid grid_from_json(const Json & value);

/// Fields absent from `value` keep their value from `base`. Unknown fields and type mismatches
/// are collected and reported together in one InvalidInput.
FitConfig fit_config_from_json(const Json & value, FitConfig base = {});
Json to_json(const FitConfig & config);

SceneSpec scene_spec_from_json(const Json & value, SceneSpec base = {});
Json to_json(const SceneSpec & spec);

Json to_json(const RleMask & rle);
RleMask rle_from_json(const Json & value);

Json to_json(const EvalResult & result);

/// CSV with one row per metric (AP, AP50, AP25) and one column per class after the mean.
std::string eval_to_csv(const EvalResult & result);

struct PredictionSet
{
  std::size_t point_count = 0;
  std::vector<ScoredMask> predictions;
};

/// {"format": "radseg-predictions", "version": 1, "point_count": N,
///  "predictions": [{"class_id": c, "confidence": s, "mask": {"size": N, "counts": [...]}}, ...]}
Json to_json(const PredictionSet & set);
PredictionSet predictions_from_json(const Json & value);

Json to_json(const std::vector<TightnessEntry> & entries);
Json to_json(const TightnessSummary & summary);
Json to_json(const std::vector<AblationRow> & rows);

struct GradcheckReport;
Json to_json(const GradcheckReport & report);

}  // namespace radseg
