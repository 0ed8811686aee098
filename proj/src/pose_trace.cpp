// Copyright 2026 The VirusBoxing Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "virusboxing/interaction.hpp"

namespace virusboxing {
namespace {

// Shortest round-trip representation; traces must re-detect identically.
std::string vec_json(const Vec3& v) { return fmt::format("[{},{},{}]", v.x, v.y, v.z); }

Vec3 vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("pose trace: expected 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void write_pose_trace(std::ostream& out, std::span<const PoseSample> samples) {
  for (const PoseSample& s : samples) {
    out << fmt::format(R"({{"time":{},"head_pos":{},"left_hand_pos":{},"right_hand_pos":{},"buttons":[{}]}})",
                       s.time, vec_json(s.head_pos), vec_json(s.left_hand_pos),
                       vec_json(s.right_hand_pos), s.pressed(kButtonA) ? "\"A\"" : "")
        << '\n';
  }
}

std::vector<PoseSample> read_pose_trace(std::istream& in) {
  std::vector<PoseSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PoseSample s;
      s.time = j.at("time").get<double>();
      s.head_pos = vec_from(j.at("head_pos"));
      s.left_hand_pos = vec_from(j.at("left_hand_pos"));
      s.right_hand_pos = vec_from(j.at("right_hand_pos"));
      for (const auto& b : j.at("buttons")) {
        if (b.get<std::string>() == "A") s.buttons |= kButtonA;
      }
      if (!samples.empty() && s.time < samples.back().time) {
        throw std::runtime_error("samples out of time order");
      }
      samples.push_back(s);
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("pose trace line {}: {}", line_no, e.what()));
    }
  }
  return samples;
}

}  // namespace virusboxing
