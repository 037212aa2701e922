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
#include <cmath>

#include "doctest.h"
#include "radseg/assembly.hpp"
#include "radseg/error.hpp"
#include "radseg/rle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace radseg;

namespace
{

BinaryMask random_mask(fixture::Rng & rng, std::size_t n, double p)
{
  BinaryMask m{std::vector<std::uint8_t>(n)};
  for (auto & b : m.bits) {
    b = fixture::uni(rng, 0, 1) < p ? 1 : 0;
  }
  return m;
}

}  // namespace

TEST_CASE("mask iou")
{
  const BinaryMask a{{1, 1, 0, 0}};
  const BinaryMask b{{0, 1, 1, 0}};
  CHECK(mask_iou(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(mask_iou(a, a) == 1.0);
  const BinaryMask empty{{0, 0, 0, 0}};
  CHECK(mask_iou(empty, empty) == 0.0);
  CHECK(mask_iou(a, empty) == 0.0);
  CHECK_THROWS_AS((mask_iou(a, BinaryMask{{1}})), InvalidInput);
  CHECK(a.count() == 2);
}

TEST_CASE("assembly thresholds migrated radii against sector rays")
{
  fixture::Rng rng(8);
  const SectorGrid g{4, 3};
  std::vector<Point3> pts;
  for (int i = 0; i < 300; ++i) {
    pts.push_back(fixture::random_point(rng, 2.0));
  }
  PointCloud cloud;
  cloud.positions = pts;
  Proposal p;
  p.polygon = {{0.1, 0.2, -0.1}, {}, g};
  for (std::size_t s = 0; s < g.sector_count(); ++s) {
    p.polygon.rays.push_back(fixture::uni(rng, 0.3, 2.0));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    p.deltas.push_back(fixture::uni(rng, -0.5, 0.5));
  }
  const BinaryMask m = assemble_mask(p, cloud);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = distance(pts[i], p.polygon.center) + p.deltas[i];
    const bool in = r <= p.polygon.rays[oracle::sector_of(pts[i], p.polygon.center, g)];
    CHECK(static_cast<bool>(m.bits[i]) == in);
  }
  p.deltas.pop_back();
  CHECK_THROWS_AS(assemble_mask(p, cloud), InvalidInput);
}

TEST_CASE("zero deltas reproduce polygon containment")
{
  fixture::Rng rng(9);
  const PointCloud cloud = fixture::labeled_cloud(rng, 1, 100, 200);
  const auto gts = instances_from_labels(cloud);
  Proposal p;
  p.polygon = exact_target(cloud, gts[0], {5, 5});
  p.deltas.assign(cloud.size(), 0.0);
  const BinaryMask m = assemble_mask(p, cloud);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CHECK(static_cast<bool>(m.bits[i]) == contains(p.polygon, cloud.positions[i]));
  }
}

TEST_CASE("nms matches the reference on random inputs")
{
  fixture::Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    std::vector<ScoredMask> props;
    const std::size_t n = 1 + static_cast<std::size_t>(t % 9);
    for (std::size_t i = 0; i < n; ++i) {
      // Quantized confidences produce ties; both sides break them by index.
      props.push_back({random_mask(rng, 12, 0.5), static_cast<int>(i % 2), std::round(fixture::uni(rng, 0, 1) * 8) / 8});
    }
    NmsOptions o;
    o.iou_threshold = fixture::uni(rng, 0.2, 0.8);
    o.class_aware = t % 2 == 0;
    CHECK(nms(props, o) == oracle::nms(props, o));
  }
}

TEST_CASE("nms threshold and suppression")
{
  const BinaryMask a{{1, 1, 1, 0}};
  const BinaryMask b{{1, 1, 0, 0}};
  const BinaryMask c{{0, 0, 0, 1}};
  std::vector<ScoredMask> props{{b, 0, 0.7}, {a, 0, 0.9}, {c, 1, 0.1}};
  CHECK(nms(props) == std::vector<std::size_t>{1});
  NmsOptions o;
  o.conf_threshold = 0.0;
  o.iou_threshold = 0.7;
  CHECK(nms(props, o) == std::vector<std::size_t>{1, 0, 2});
  props[0].confidence = 1.5;
  CHECK_THROWS_AS(nms(props), InvalidInput);
  CHECK(nms(std::vector<ScoredMask>{}).empty());
}

TEST_CASE("rle round trip")
{
  fixture::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const BinaryMask m = random_mask(rng, static_cast<std::size_t>(t), fixture::uni(rng, 0, 1));
    const RleMask r = rle_encode(m);
    CHECK(r.size == m.size());
    CHECK(rle_decode(r) == m);
  }
}

TEST_CASE("rle runs start with zeros")
{
  CHECK(rle_encode(BinaryMask{{1, 1, 0, 1}}).counts == std::vector<std::uint64_t>{0, 2, 1, 1});
  CHECK(rle_encode(BinaryMask{{0, 0, 0}}).counts == std::vector<std::uint64_t>{3});
  CHECK(rle_encode(BinaryMask{}).counts == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS((rle_decode(RleMask{3, {1, 1}})), InvalidInput);
  CHECK_THROWS_AS((rle_decode(RleMask{2, {1, 5}})), InvalidInput);
}
