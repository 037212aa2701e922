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
#include <string>

#include "doctest.h"
#include "radseg/error.hpp"
#include "radseg/json_io.hpp"
#include "radseg/rle.hpp"

using namespace radseg;

TEST_CASE("fit config round trip")
{
  FitConfig c;
  c.proposal_count = 9;
  c.grid = {3, 7};
  c.lambdas = {0.1, 0.2, 0.3, 0.4};
  c.learning_rate.delta = 12.5;
  c.fine.sign = MisclassSign::kInverted;
  c.fine.use_cohesion = false;
  c.nms.class_aware = true;
  c.seed = 123456789012345ULL;
  const FitConfig back = fit_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(back.grid == c.grid);
  CHECK(back.fine.sign == MisclassSign::kInverted);
}

TEST_CASE("partial config keeps defaults")
{
  const FitConfig c = fit_config_from_json(parse_json(R"({"iterations": 7, "nms": {"iou_threshold": 0.3}})"));
  CHECK(c.iterations == 7);
  CHECK(c.nms.iou_threshold == 0.3);
  CHECK(c.nms.conf_threshold == 0.2);
  CHECK(c.proposal_count == 4);
}

TEST_CASE("config errors list every problem")
{
  try {
    fit_config_from_json(parse_json(R"({"iteration": 7, "grid": [1], "fine": {"sign": "up"}, "seed": -1})"));
    FAIL("expected InvalidInput");
  } catch (const InvalidInput & e) {
    const std::string msg = e.what();
    CHECK(msg.find("iteration") != std::string::npos);
    CHECK(msg.find("grid") != std::string::npos);
    CHECK(msg.find("sign") != std::string::npos);
    CHECK(msg.find("seed") != std::string::npos);
  }
  CHECK_THROWS_AS(fit_config_from_json(parse_json("[]")), InvalidInput);
}

TEST_CASE("scene spec round trip")
{
  SceneSpec s;
  s.seed = 77;
  s.shapes = {ShapeFamily::kLShape, ShapeFamily::kEllipsoid};
  s.with_color = true;
  const SceneSpec back = scene_spec_from_json(to_json(s));
  CHECK(to_json(back) == to_json(s));
  CHECK_THROWS_AS((scene_spec_from_json(parse_json(R"({"shapes": ["cube"]})"))), InvalidInput);
}

TEST_CASE("malformed JSON reports its line")
{
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError & e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("predictions round trip")
{
  PredictionSet set{5, {{BinaryMask{{0, 1, 1, 0, 1}}, 2, 0.75}, {BinaryMask{{0, 0, 0, 0, 0}}, 0, 0.5}}};
  const Json j = to_json(set);
  CHECK(j["format"] == "radseg-predictions");
  CHECK(j["predictions"][0]["mask"]["counts"] == Json::array({1, 2, 1, 1}));
  const PredictionSet back = predictions_from_json(parse_json(dump_json(j)));
  REQUIRE(back.predictions.size() == 2);
  CHECK(back.point_count == 5);
  CHECK(back.predictions[0].mask == set.predictions[0].mask);
  CHECK(back.predictions[0].class_id == 2);
  CHECK(back.predictions[0].confidence == 0.75);

  Json bad = j;
  bad["predictions"][0]["confidence"] = 1.5;
  CHECK_THROWS_AS(predictions_from_json(bad), InvalidInput);
  bad = j;
  bad["point_count"] = 6;
  CHECK_THROWS_AS(predictions_from_json(bad), InvalidInput);
  bad = j;
  bad.erase("format");
  CHECK_THROWS_AS(predictions_from_json(bad), InvalidInput);
}

TEST_CASE("rle json")
{
  const RleMask r{4, {1, 2, 1}};
  CHECK(rle_from_json(to_json(r)) == r);
  CHECK_THROWS_AS((rle_from_json(parse_json(R"({"size": 2, "counts": [-1]})"))), InvalidInput);
}

TEST_CASE("eval outputs")
{
  EvalResult r;
  r.ap = 0.5;
  r.ap50 = 0.75;
  r.ap25 = 1.0;
  ClassMetrics with_gt;
  with_gt.class_id = 0;
  with_gt.gt_count = 2;
  with_gt.ap = 0.5;
  with_gt.ap50 = 0.75;
  with_gt.ap25 = 1.0;
  ClassMetrics without_gt;
  without_gt.class_id = 1;
  r.per_class = {with_gt, without_gt};
  const Json j = to_json(r);
  CHECK(j["ap"] == 0.5);
  CHECK(j["per_class"][1]["ap"].is_null());
  CHECK(eval_to_csv(r) == "metric,mean,class_0,class_1\nAP,0.5,0.5,\nAP50,0.75,0.75,\nAP25,1,1,\n");
}

TEST_CASE("dump is stable")
{
  const Json j = parse_json(R"({"b": 1, "a": [1.5, 2]})");
  CHECK(dump_json(j) == "{\n  \"a\": [\n    1.5,\n    2\n  ],\n  \"b\": 1\n}\n");
}
