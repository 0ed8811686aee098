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

#include "virusboxing/progression.hpp"

#include <algorithm>

#include "virusboxing/metrics.hpp"

namespace virusboxing {

ProgressionState on_virus_destroyed(ProgressionState s, double sim_time) {
  ++s.viruses_destroyed;
  if (!s.empowered_at(sim_time)) s.energy = std::min(s.energy + 1, kMaxEnergy);
  return s;
}

ProgressionState on_virus_missed(ProgressionState s) {
  ++s.viruses_missed;
  return s;
}

ProgressionState on_cell_avoided(ProgressionState s) {
  ++s.cells_avoided;
  return s;
}

ProgressionState on_cell_collided(ProgressionState s) {
  ++s.cells_collided;
  return s;
}

ProgressionState on_wrong_hand(ProgressionState s) {
  ++s.wrong_hand_jabs;
  return s;
}

std::string_view to_string(RefusedReason r) {
  switch (r) {
    case RefusedReason::NotFull: return "not_full";
    case RefusedReason::NoPress: return "no_press";
    case RefusedReason::AlreadyEmpowered: return "already_empowered";
  }
  return "unknown";
}

ActivationResult activate_empowerment(const ProgressionState& s, double sim_time,
                                      bool button_pressed) {
  if (!button_pressed) return {s, RefusedReason::NoPress};
  if (s.empowered_at(sim_time)) return {s, RefusedReason::AlreadyEmpowered};
  if (s.energy < kMaxEnergy) return {s, RefusedReason::NotFull};
  ProgressionState next = s;
  next.energy = 0;
  next.empowered_until = sim_time + kEmpowermentDuration;
  ++next.activations;
  return {next, std::nullopt};
}

ProgressionState tick_empowerment(ProgressionState s, double sim_time) {
  if (s.empowered_until && !s.empowered_at(sim_time)) s.empowered_until.reset();
  return s;
}

SummaryMetrics summary(const ProgressionState& s, const SpawnCounts& spawned) {
  SummaryMetrics m;
  m.viruses_spawned = spawned.viruses;
  m.cells_spawned = spawned.cells;
  m.viruses_destroyed = s.viruses_destroyed;
  m.viruses_missed = s.viruses_missed;
  m.cells_avoided = s.cells_avoided;
  m.cells_collided = s.cells_collided;
  m.wrong_hand_jabs = s.wrong_hand_jabs;
  m.activations = s.activations;
  m.finalize_percentages();
  return m;
}

}  // namespace virusboxing
