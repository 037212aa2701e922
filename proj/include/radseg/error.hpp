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
#include <stdexcept>
#include <string>

namespace radseg
{

/// Raised for arguments that violate a documented precondition.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a scene, prediction or config file cannot be parsed.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & what, std::size_t line)
  : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
    line_(line)
  {
  }

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Raised when an optimization produces a non-finite loss.
class Divergence : public std::runtime_error
{
public:
  Divergence(const std::string & what, std::size_t iteration)
  : std::runtime_error(what + " at iteration " + std::to_string(iteration)), iteration_(iteration)
  {
  }

  std::size_t iteration() const noexcept { return iteration_; }

private:
  std::size_t iteration_;
};

}  // namespace radseg
