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

// HIIT timeline and spawn scheduling.
//
//   [0,30) low  [30,120) sprint  x3 repetitions  -> [360,420) cooldown -> ended
//
// Low intensity and cooldown spawn every 0.8 s at 5.7 m/s; sprints spawn
// every 0.5 s at 8 m/s. All boundaries are left-closed, right-open.

#include <optional>
#include <string_view>

#include "virusboxing/entity.hpp"
#include "virusboxing/rng.hpp"

namespace virusboxing {

inline constexpr double kLowDuration = 30.0;
inline constexpr double kSprintDuration = 90.0;
inline constexpr double kCooldownDuration = 60.0;
inline constexpr int kRepetitions = 3;
inline constexpr double kSessionDuration =
    kRepetitions * (kLowDuration + kSprintDuration) + kCooldownDuration;  // 420 s

inline constexpr double kLowSpawnInterval = 0.8;
inline constexpr double kLowSpawnSpeed = 5.7;
inline constexpr double kSprintSpawnInterval = 0.5;
inline constexpr double kSprintSpawnSpeed = 8.0;

inline constexpr double kMinModulation = 0.5;
inline constexpr double kMaxModulation = 2.0;
inline constexpr double kMaxLaneOffset = 0.5;

enum class PhaseKind { LowIntensity, Sprint, Cooldown, Ended };

std::string_view to_string(PhaseKind kind);

struct ProtocolPhase {
  PhaseKind kind = PhaseKind::LowIntensity;
  int index = 0;  // repetition, 0-based; always 0 for cooldown/ended
  double elapsed = 0.0;

  bool operator==(const ProtocolPhase&) const = default;
};

// Throws std::domain_error for negative or non-finite t.
ProtocolPhase phase_at(double t);

// Start time of the phase (kind, index); used for boundary reasoning.
double phase_start(PhaseKind kind, int index);

struct SpawnParams {
  double interval = kLowSpawnInterval;  // seconds between spawns
  double speed = kLowSpawnSpeed;        // m/s
};

class SpawnModulation {
 public:
  constexpr SpawnModulation() = default;
  // Scales are clamped into [0.5, 2.0].
  SpawnModulation(double interval_scale, double speed_scale);

  static constexpr SpawnModulation identity() { return {}; }

  double interval_scale() const { return interval_scale_; }
  double speed_scale() const { return speed_scale_; }

  bool operator==(const SpawnModulation&) const = default;

 private:
  double interval_scale_ = 1.0;
  double speed_scale_ = 1.0;
};

// nullopt for the Ended phase: nothing spawns once the protocol is over.
std::optional<SpawnParams> spawn_params(const ProtocolPhase& phase,
                                        const SpawnModulation& mod = {});

// Maps u in [0,1) onto red, blue, flat, right-tilt, left-tilt with
// cumulative bounds 0.35, 0.70, 0.90, 0.95, 1.0.
EntityKind kind_for_unit(double u);
EntityKind sample_kind(Rng& rng);

struct SpawnEvent {
  double time = 0.0;
  EntityKind kind = EntityKind::RedVirus;
  double lane_offset = 0.0;  // meters, within +-0.5
  double speed = 0.0;
};

// Draws the kind first, then the lane, from the same stream.
SpawnEvent next_spawn(Rng& rng, double now, const SpawnParams& params);

}  // namespace virusboxing
