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

#include "virusboxing/config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace virusboxing {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double number_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("config: '{}' must be a number", key));
  return v.get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(fmt::format("{}: unknown key '{}'", where, item.key()));
    }
  }
}

PlayerProfile resolve_profile(const json& v, std::span<const PlayerProfile> extra) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    for (const PlayerProfile& p : extra) {
      if (p.name == name) return p;
    }
    if (auto p = builtin_profile(name)) return *p;
    throw ConfigError(fmt::format("config: unknown profile '{}'", name));
  }
  if (v.is_object()) return v.get<PlayerProfile>();
  throw ConfigError("config: 'profile' must be a name or an object");
}

ordered_json to_ordered(const SessionConfig& c, bool with_seed) {
  ordered_json j;
  if (with_seed) j["seed"] = c.seed;
  j["targeting"] = std::string(to_string(c.targeting.mode));
  j["range"] = std::string(to_string(c.targeting.range));
  j["pid"] = c.pid_enabled;
  j["hr_setpoint"] = c.hr_setpoint;
  j["pid_gains"] = {{"kp", c.pid_gains.kp}, {"ki", c.pid_gains.ki}, {"kd", c.pid_gains.kd}};
  j["profile"] = json(c.profile);
  ordered_json cal;
  cal["standing_head_height"] = c.calibration.standing_head_height;
  cal["squat_ratio"] = c.calibration.squat_ratio;
  cal["lean_threshold"] = c.calibration.lean_threshold;
  cal["center_x"] = c.calibration.center_x;
  j["calibration"] = cal;
  j["dt"] = c.dt;
  return j;
}

}  // namespace

SessionConfig parse_config(std::string_view json_text, std::span<const PlayerProfile> extra) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(doc,
                 {"seed", "targeting", "range", "pid", "hr_setpoint", "pid_gains", "profile",
                  "calibration", "dt"},
                 "config");

  SessionConfig c;
  try {
    if (doc.contains("seed")) {
      const json& s = doc.at("seed");
      if (!s.is_number_unsigned()) throw ConfigError("config: 'seed' must be a non-negative integer");
      c.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("targeting")) {
      const auto s = doc.at("targeting").get<std::string>();
      auto m = targeting_mode_from_string(s);
      if (!m) throw ConfigError(fmt::format("config: unknown targeting '{}'", s));
      c.targeting.mode = *m;
    }
    if (doc.contains("range")) {
      const auto s = doc.at("range").get<std::string>();
      auto r = punch_range_from_string(s);
      if (!r) throw ConfigError(fmt::format("config: unknown range '{}'", s));
      c.targeting.range = *r;
    }
    if (doc.contains("pid")) {
      if (!doc.at("pid").is_boolean()) throw ConfigError("config: 'pid' must be true or false");
      c.pid_enabled = doc.at("pid").get<bool>();
    }
    c.hr_setpoint = number_field(doc, "hr_setpoint", c.hr_setpoint);
    if (doc.contains("pid_gains")) {
      const json& g = doc.at("pid_gains");
      reject_unknown(g, {"kp", "ki", "kd"}, "pid_gains");
      c.pid_gains.kp = number_field(g, "kp", c.pid_gains.kp);
      c.pid_gains.ki = number_field(g, "ki", c.pid_gains.ki);
      c.pid_gains.kd = number_field(g, "kd", c.pid_gains.kd);
    }
    if (doc.contains("profile")) c.profile = resolve_profile(doc.at("profile"), extra);
    if (doc.contains("calibration")) {
      const json& k = doc.at("calibration");
      reject_unknown(k, {"standing_head_height", "squat_ratio", "lean_threshold", "center_x"},
                     "calibration");
      c.calibration.standing_head_height =
          number_field(k, "standing_head_height", c.calibration.standing_head_height);
      c.calibration.squat_ratio = number_field(k, "squat_ratio", c.calibration.squat_ratio);
      c.calibration.lean_threshold =
          number_field(k, "lean_threshold", c.calibration.lean_threshold);
      c.calibration.center_x = number_field(k, "center_x", c.calibration.center_x);
    }
    c.dt = number_field(doc, "dt", c.dt);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

SessionConfig load_config(const std::filesystem::path& path,
                          std::span<const PlayerProfile> extra) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), extra);
}

std::string canonical_config_json(const SessionConfig& config) {
  return to_ordered(config, true).dump();
}

std::string config_hash(const SessionConfig& config) {
  const std::string text = to_ordered(config, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace virusboxing
