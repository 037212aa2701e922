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
#include <string>
#include <vector>

namespace radseg
{

/// Central-difference verification of every analytic gradient in the library.
struct GradcheckOptions
{
  std::uint64_t seed = 1;
  std::size_t trials = 1000;      // random configurations per loss
  double step = 1e-6;
  double tolerance = 1e-5;        // max relative error for the individual losses
  double total_tolerance = 1e-4;  // max relative error for the fitter's total loss
};

struct GradcheckEntry
{
  std::string name;
  std::size_t configurations = 0;
  std::size_t components = 0;  // gradient entries compared
  double max_relative_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct GradcheckReport
{
  GradcheckOptions options;
  std::vector<GradcheckEntry> entries;
  bool pass = false;
};

/// Relative error |a - b| / max(|a|, |b|, 1e-6).
double relative_error(double analytic, double numeric);

/// Configurations are sampled away from partition boundaries and L1 kinks (margin >= 1e-3) and
/// outside tanh saturation (|r + delta - ray| <= 3), where finite differences are meaningful.
GradcheckReport run_gradcheck(const GradcheckOptions & options);

}  // namespace radseg
