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

#include "radseg/scene_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "radseg/error.hpp"

namespace radseg
{

namespace
{

constexpr std::string_view kMagic = "# radseg-scene v1";

std::vector<std::string_view> split_ws(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char * what)
{
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("cannot parse " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  return value;
}

std::size_t header_field(const std::vector<std::string_view> & toks, std::string_view key, std::size_t line)
{
  for (const auto tok : toks) {
    if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=') {
      return parse_number<std::size_t>(tok.substr(key.size() + 1), line, "header field");
    }
  }
  throw ParseError("header is missing '" + std::string(key) + "='", line);
}

}  // namespace

std::string format_double(double value)
{
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw InvalidInput("format_double: conversion failed");
  }
  return std::string(buf, ptr);
}

void write_scene(std::ostream & out, const PointCloud & cloud)
{
  cloud.validate();
  std::size_t instance_count = 0;
  {
    std::vector<int> ids = cloud.instance_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const int id : ids) {
      instance_count += id == kBackgroundLabel ? 0 : 1;
    }
  }
  out << kMagic << " points=" << cloud.size() << " instances=" << instance_count
      << " color=" << (cloud.has_color() ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3 & p = cloud.positions[i];
    out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z);
    if (cloud.has_color()) {
      const auto & c = cloud.colors[i];
      out << ' ' << int{c[0]} << ' ' << int{c[1]} << ' ' << int{c[2]};
    }
    const int inst = cloud.has_labels() ? cloud.instance_ids[i] : kBackgroundLabel;
    const int sem = cloud.has_labels() ? cloud.semantic_ids[i] : kBackgroundLabel;
    out << ' ' << inst << ' ' << sem << '\n';
  }
}

PointCloud read_scene(std::istream & in)
{
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0) {
    throw ParseError("missing or unsupported header, expected '" + std::string(kMagic) + " ...'", 1);
  }
  const auto header = split_ws(line);
  const std::size_t n = header_field(header, "points", 1);
  const std::size_t with_color = header_field(header, "color", 1);
  if (with_color > 1) {
    throw ParseError("header field color must be 0 or 1", 1);
  }
  const std::size_t expected_cols = with_color != 0 ? 8 : 5;

  PointCloud cloud;
  cloud.positions.reserve(n);
  cloud.instance_ids.reserve(n);
  cloud.semantic_ids.reserve(n);
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) {
      continue;
    }
    if (toks.size() != expected_cols) {
      throw ParseError("expected " + std::to_string(expected_cols) + " columns, found " +
                         std::to_string(toks.size()),
                       line_no);
    }
    if (cloud.positions.size() == n) {
      throw ParseError("more points than declared in header (" + std::to_string(n) + ")", line_no);
    }
    Point3 p{parse_number<double>(toks[0], line_no, "x"), parse_number<double>(toks[1], line_no, "y"),
             parse_number<double>(toks[2], line_no, "z")};
    if (!is_finite(p)) {
      throw ParseError("non-finite coordinate", line_no);
    }
    cloud.positions.push_back(p);
    std::size_t col = 3;
    if (with_color != 0) {
      std::array<std::uint8_t, 3> c{};
      for (int k = 0; k < 3; ++k) {
        const int v = parse_number<int>(toks[col++], line_no, "color");
        if (v < 0 || v > 255) {
          throw ParseError("color component out of range 0..255", line_no);
        }
        c[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(v);
      }
      cloud.colors.push_back(c);
    }
    const int inst = parse_number<int>(toks[col++], line_no, "instance id");
    const int sem = parse_number<int>(toks[col], line_no, "semantic id");
    if (inst < kBackgroundLabel) {
      throw ParseError("instance id must be >= -1", line_no);
    }
    cloud.instance_ids.push_back(inst);
    cloud.semantic_ids.push_back(sem);
  }
  if (cloud.positions.size() != n) {
    throw ParseError("header declares " + std::to_string(n) + " points but file has " +
                       std::to_string(cloud.positions.size()),
                     line_no);
  }
  return cloud;
}

void write_scene_file(const std::string & path, const PointCloud & cloud)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidInput("cannot open '" + path + "' for writing");
  }
  write_scene(out, cloud);
}

PointCloud read_scene_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot open scene file '" + path + "'");
  }
  return read_scene(in);
}

}  // namespace radseg
