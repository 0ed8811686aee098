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

// Fixed-step session loop. Each tick k covers [k*dt, (k+1)*dt) and runs, in
// order:
//   1. phase lookup and PID update (sprints only; identity otherwise)
//   2. due spawns, each followed by the player's plan and the next spawn draw
//   3. the player's pose sample for this tick
//   4. button activation, then jab detection and resolution
//   5. world advance to the next tick, resolving plane crossings
//   6. empowerment expiry at the next tick's time
//   7. heart-rate and calorie step (protocol time only)
//   8. log append
// After 420 s nothing spawns; the loop keeps stepping until every entity has a
// terminal status.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "virusboxing/interaction.hpp"
#include "virusboxing/metrics.hpp"
#include "virusboxing/physiology.hpp"
#include "virusboxing/playersim.hpp"
#include "virusboxing/session_log.hpp"

namespace virusboxing {

inline constexpr std::string_view kLogVersion = "virusboxing-sim/1";

struct SessionConfig {
  std::uint64_t seed = 1;
  TargetingPolicy targeting;
  bool pid_enabled = false;
  double hr_setpoint = 150.0;
  PidGains pid_gains;
  PlayerProfile profile;
  Calibration calibration;
  double dt = 0.02;

  // Throws ConfigError.
  void validate() const;
  int ticks_per_second() const;
};

struct TraceRow {
  double time = 0.0;
  double hr = 0.0;
  double kcal = 0.0;
  PhaseKind phase = PhaseKind::LowIntensity;
  int energy = 0;
  bool empowered = false;
  double interval_scale = 1.0;
  double speed_scale = 1.0;
};

inline constexpr const char* kTraceCsvHeader = "time,hr,kcal,phase,energy,empowered";
std::string trace_csv(const std::vector<TraceRow>& rows);

struct SessionResult {
  SessionLog log;
  SummaryMetrics metrics;
  std::vector<TraceRow> trace;  // one row per protocol tick, t in [0, 420]
  std::int64_t final_tick = 0;  // last tick stepped, including the drain
};

SessionResult run_session(const SessionConfig& config);

enum class VerifyStatus { Pass, HeaderMismatch, Divergence };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Pass;
  std::optional<std::int64_t> tick;  // first differing tick on divergence
  std::string message;

  bool passed() const { return status == VerifyStatus::Pass; }
};

VerifyResult replay_verify(const SessionLog& log, const SessionConfig& config);

}  // namespace virusboxing
