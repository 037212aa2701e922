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

#include <iosfwd>
#include <string>

#include "radseg/scene.hpp"

namespace radseg
{

/// Columnar text scene format, version 1.
///
///     # radseg-scene v1 points=<N> instances=<M> color=<0|1>
///     x y z [r g b] instance_id semantic_id
///
/// One point per line after the header. instance_id -1 is background. Coordinates are written in
/// shortest round-trip form, so writing a parsed file reproduces it byte for byte.
void write_scene(std::ostream & out, const PointCloud & cloud);
PointCloud read_scene(std::istream & in);

void write_scene_file(const std::string & path, const PointCloud & cloud);
PointCloud read_scene_file(const std::string & path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace radseg
