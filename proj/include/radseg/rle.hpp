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
#include <vector>

#include "radseg/assembly.hpp"

namespace radseg
{

/// Run-length encoded mask: alternating run lengths starting with a (possibly empty) run of zeros.
struct RleMask
{
  std::size_t size = 0;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const RleMask &, const RleMask &) = default;
};

RleMask rle_encode(const BinaryMask & mask);

/// Throws InvalidInput when the runs do not sum to `size`.
BinaryMask rle_decode(const RleMask & rle);

}  // namespace radseg
