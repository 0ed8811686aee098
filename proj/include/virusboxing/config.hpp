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

#pragma once

// Session configuration files. Layout (every key optional):
//
//   {
//     "seed": 7,
//     "targeting": "rt",            // "pt" | "rt"
//     "range": "long",              // "short" | "medium" | "long"
//     "pid": false,
//     "hr_setpoint": 150.0,
//     "pid_gains": {"kp": 0.08, "ki": 0.01, "kd": 0.0},
//     "profile": "mid",             // builtin name, or a full profile object
//     "calibration": {"standing_head_height": 1.70, "squat_ratio": 0.75,
//                     "lean_threshold": 0.20, "center_x": 0.0},
//     "dt": 0.02
//   }
//
// Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "virusboxing/session.hpp"

namespace virusboxing {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `extra_profiles` are searched before the builtins when "profile" is a name.
SessionConfig parse_config(std::string_view json_text,
                           std::span<const PlayerProfile> extra_profiles = {});
SessionConfig load_config(const std::filesystem::path& path,
                          std::span<const PlayerProfile> extra_profiles = {});

// Canonical form: fixed key order, profile written out in full. Parses back
// to an equal config.
std::string canonical_config_json(const SessionConfig& config);

// FNV-1a 64 over the canonical form with the seed left out, as 16 hex digits.
std::string config_hash(const SessionConfig& config);

}  // namespace virusboxing
