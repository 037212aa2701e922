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
#include <set>

#include "doctest.h"
#include "radseg/error.hpp"
#include "radseg/matching.hpp"
#include "radseg/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace radseg;

TEST_CASE("duplicate_gt repeats each instance")
{
  CHECK(duplicate_gt(2) == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(duplicate_gt(3, 1) == std::vector<std::size_t>{0, 1, 2});
  CHECK(duplicate_gt(0).empty());
  CHECK_THROWS_AS(duplicate_gt(2, 0), InvalidInput);
}

TEST_CASE("hungarian on a known matrix")
{
  CostMatrix m(3, 3);
  const double v[3][3] = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      m(r, c) = v[r][c];
    }
  }
  const Assignment a = hungarian_solve(m);
  CHECK(a.total_cost == 5.0);
  CHECK(a.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}, {2, 2}});
}

TEST_CASE("hungarian matches exhaustive search on rectangular matrices")
{
  fixture::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 6);
    const std::size_t cols = 1 + static_cast<std::size_t>(rng() % 6);
    CostMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = fixture::uni(rng, 0, 10);
      }
    }
    const Assignment a = hungarian_solve(m);
    CHECK(a.pairs.size() == std::min(rows, cols));
    std::set<std::size_t> rs;
    std::set<std::size_t> cs;
    for (const auto & [r, c] : a.pairs) {
      rs.insert(r);
      cs.insert(c);
    }
    CHECK(rs.size() == a.pairs.size());
    CHECK(cs.size() == a.pairs.size());
    CHECK(a.total_cost == doctest::Approx(oracle::brute_assignment(m)).epsilon(1e-12));
  }
}

TEST_CASE("hungarian edge cases")
{
  CHECK(hungarian_solve(CostMatrix{}).pairs.empty());
  CHECK(hungarian_solve(CostMatrix(0, 3)).pairs.empty());
  CostMatrix m(2, 2, 1.0);
  m(1, 1) = NAN;
  CHECK_THROWS_AS(hungarian_solve(m), InvalidInput);
  CostMatrix big(1, 1, 5e12);
  CHECK(hungarian_solve(big).total_cost == 5e12);
}

TEST_CASE("resolve_assignment maps columns back to instances")
{
  Assignment a;
  a.pairs = {{0, 5}, {2, 1}};
  const auto cols = duplicate_gt(2);
  CHECK(resolve_assignment(a, cols, 4) == std::vector<int>{1, -1, 0, -1});
  a.pairs = {{0, 9}};
  CHECK_THROWS_AS(resolve_assignment(a, cols, 4), InvalidInput);
}

TEST_CASE("every instance gets a proposal when proposals cover the duplicated columns")
{
  fixture::Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t g = 1 + static_cast<std::size_t>(t % 3);
    const auto cols = duplicate_gt(g);
    CostMatrix m(cols.size() + static_cast<std::size_t>(t % 4), cols.size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        m(r, c) = fixture::uni(rng, 0, 1);
      }
    }
    const auto matched = resolve_assignment(hungarian_solve(m), cols, m.rows());
    for (std::size_t k = 0; k < g; ++k) {
      CHECK(std::count(matched.begin(), matched.end(), static_cast<int>(k)) == 4);
    }
  }
}

TEST_CASE("pair cost prefers the proposal sitting on the instance")
{
  SceneSpec spec;
  spec.seed = 2;
  spec.instance_count = 2;
  const Scene s = generate_scene(spec);
  const SectorGrid g{5, 5};
  const auto targets = make_targets(s.cloud, s.instances, g);
  std::vector<ProposalEstimate> props;
  for (const auto & t : targets) {
    std::vector<double> logits(3, 0.0);
    logits[static_cast<std::size_t>(t.class_id)] = 3.0;
    props.push_back({t.polygon.center, t.polygon.rays, std::vector<double>(s.cloud.size(), 0.0), logits});
  }
  const auto cols = duplicate_gt(targets.size(), 1);
  const CostMatrix m = build_cost_matrix(props, targets, s.cloud.positions, cols);
  CHECK(m(0, 0) < m(0, 1));
  CHECK(m(1, 1) < m(1, 0));
  const auto matched = resolve_assignment(hungarian_solve(m), cols, props.size());
  CHECK(matched == std::vector<int>{0, 1});
  const std::vector<std::size_t> bad{7};
  CHECK_THROWS_AS(build_cost_matrix(props, targets, s.cloud.positions, bad), InvalidInput);
}
