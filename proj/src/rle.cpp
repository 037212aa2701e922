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

#include "radseg/rle.hpp"

#include <string>

#include "radseg/error.hpp"

namespace radseg
{

RleMask rle_encode(const BinaryMask & mask)
{
  RleMask rle;
  rle.size = mask.size();
  std::uint8_t current = 0;
  std::uint64_t run = 0;
  for (const std::uint8_t b : mask.bits) {
    const std::uint8_t v = b != 0 ? 1 : 0;
    if (v != current) {
      rle.counts.push_back(run);
      run = 0;
      current = v;
    }
    ++run;
  }
  if (run > 0 || rle.counts.empty()) {
    rle.counts.push_back(run);
  }
  return rle;
}

BinaryMask rle_decode(const RleMask & rle)
{
  BinaryMask mask;
  mask.bits.reserve(rle.size);
  std::uint8_t value = 0;
  for (const std::uint64_t run : rle.counts) {
    if (run > rle.size - mask.bits.size()) {
      throw InvalidInput("rle_decode: runs exceed declared size " + std::to_string(rle.size));
    }
    mask.bits.insert(mask.bits.end(), run, value);
    value ^= 1;
  }
  if (mask.bits.size() != rle.size) {
    throw InvalidInput("rle_decode: runs sum to " + std::to_string(mask.bits.size()) + ", declared size " +
                       std::to_string(rle.size));
  }
  return mask;
}

}  // namespace radseg
