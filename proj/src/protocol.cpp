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

#include "virusboxing/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace virusboxing {

std::string_view to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::LowIntensity: return "low";
    case PhaseKind::Sprint: return "sprint";
    case PhaseKind::Cooldown: return "cooldown";
    case PhaseKind::Ended: return "ended";
  }
  return "unknown";
}

double phase_start(PhaseKind kind, int index) {
  constexpr double block = kLowDuration + kSprintDuration;
  switch (kind) {
    case PhaseKind::LowIntensity: return index * block;
    case PhaseKind::Sprint: return index * block + kLowDuration;
    case PhaseKind::Cooldown: return kRepetitions * block;
    case PhaseKind::Ended: return kSessionDuration;
  }
  return kSessionDuration;
}

ProtocolPhase phase_at(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("phase_at: time must be finite and non-negative");
  }
  if (t >= kSessionDuration) {
    return {PhaseKind::Ended, 0, t - kSessionDuration};
  }
  const double cooldown_start = phase_start(PhaseKind::Cooldown, 0);
  if (t >= cooldown_start) {
    return {PhaseKind::Cooldown, 0, t - cooldown_start};
  }
  // Compare against exact boundaries rather than dividing, so that t = 30.0
  // lands in the sprint and never in the tail of the low interval.
  for (int i = kRepetitions - 1; i >= 0; --i) {
    const double sprint = phase_start(PhaseKind::Sprint, i);
    if (t >= sprint) return {PhaseKind::Sprint, i, t - sprint};
    const double low = phase_start(PhaseKind::LowIntensity, i);
    if (t >= low) return {PhaseKind::LowIntensity, i, t - low};
  }
  return {PhaseKind::LowIntensity, 0, t};
}

SpawnModulation::SpawnModulation(double interval_scale, double speed_scale)
    : interval_scale_(std::clamp(interval_scale, kMinModulation, kMaxModulation)),
      speed_scale_(std::clamp(speed_scale, kMinModulation, kMaxModulation)) {
  if (std::isnan(interval_scale) || std::isnan(speed_scale)) {
    throw std::invalid_argument("SpawnModulation: NaN scale");
  }
}

std::optional<SpawnParams> spawn_params(const ProtocolPhase& phase, const SpawnModulation& mod) {
  SpawnParams base;
  switch (phase.kind) {
    case PhaseKind::LowIntensity:
    case PhaseKind::Cooldown:
      base = {kLowSpawnInterval, kLowSpawnSpeed};
      break;
    case PhaseKind::Sprint:
      base = {kSprintSpawnInterval, kSprintSpawnSpeed};
      break;
    case PhaseKind::Ended:
      return std::nullopt;
  }
  return SpawnParams{base.interval / mod.interval_scale(), base.speed * mod.speed_scale()};
}

EntityKind kind_for_unit(double u) {
  if (u < 0.35) return EntityKind::RedVirus;
  if (u < 0.70) return EntityKind::BlueVirus;
  if (u < 0.90) return EntityKind::FlatCell;
  if (u < 0.95) return EntityKind::RightTiltCell;
  return EntityKind::LeftTiltCell;
}

EntityKind sample_kind(Rng& rng) { return kind_for_unit(rng.uniform()); }

SpawnEvent next_spawn(Rng& rng, double now, const SpawnParams& params) {
  SpawnEvent ev;
  ev.time = now + params.interval;
  ev.kind = sample_kind(rng);
  ev.lane_offset = rng.uniform(-kMaxLaneOffset, kMaxLaneOffset);
  ev.speed = params.speed;
  return ev;
}

}  // namespace virusboxing
