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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "virusboxing/entity.hpp"
#include "virusboxing/protocol.hpp"
#include "virusboxing/vec3.hpp"

namespace virusboxing {

inline constexpr double kCreatorDistance = 15.0;  // m, spawn plane
inline constexpr double kTargetHeight = 1.40;     // m, flight height of every entity

using EntityId = std::uint64_t;

enum class EntityStatus : std::uint8_t { InFlight, Destroyed, Missed, Passed, Collided };

std::string_view to_string(EntityStatus s);

struct Entity {
  EntityId id = 0;
  EntityKind kind = EntityKind::RedVirus;
  double spawn_time = 0.0;
  double spawn_z = kCreatorDistance;
  double lane_offset = 0.0;
  double speed = 0.0;
  EntityStatus status = EntityStatus::InFlight;
  // Last evaluated depth; always equal to position_of(*this, world time).
  double z = kCreatorDistance;

  bool in_flight() const { return status == EntityStatus::InFlight; }
};

// Depth from the player plane: spawn_z - speed * (t - spawn_time).
// Throws std::domain_error when t precedes the spawn.
double position_of(const Entity& e, double t);

Vec3 center_of(const Entity& e, double t);

double travel_time(const Entity& e);
double arrival_time(const Entity& e);

// Index k such that advancing from k/ticks_per_second to (k+1)/ticks_per_second
// takes the entity across the player plane. Matches World::advance_to exactly
// when the world is stepped on the same grid.
std::int64_t crossing_tick(const Entity& e, int ticks_per_second);

class World {
 public:
  World() = default;

  double sim_time() const { return sim_time_; }
  std::span<const Entity> entities() const { return entities_; }

  // Materializes a spawn. The event time may not lie in the future.
  EntityId spawn(const SpawnEvent& ev);

  const Entity* find(EntityId id) const;

  // One-way transition out of InFlight; throws std::logic_error otherwise.
  void set_terminal(EntityId id, EntityStatus status);

  // Moves the clock to t and returns the in-flight entities whose depth is now
  // <= 0, in ascending id order. They stay InFlight until the caller resolves
  // them.
  std::vector<EntityId> advance_to(double t);
  std::vector<EntityId> advance(double dt) { return advance_to(sim_time_ + dt); }

  std::size_t in_flight_count() const;

 private:
  Entity* find_mutable(EntityId id);

  std::vector<Entity> entities_;
  double sim_time_ = 0.0;
  EntityId next_id_ = 0;
};

}  // namespace virusboxing
