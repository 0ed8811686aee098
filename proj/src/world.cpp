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

#include "virusboxing/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace virusboxing {

std::optional<EntityKind> entity_kind_from_string(std::string_view s) {
  for (EntityKind k : kAllEntityKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(EntityStatus s) {
  switch (s) {
    case EntityStatus::InFlight: return "in_flight";
    case EntityStatus::Destroyed: return "destroyed";
    case EntityStatus::Missed: return "missed";
    case EntityStatus::Passed: return "avoided";
    case EntityStatus::Collided: return "collided";
  }
  return "unknown";
}

double position_of(const Entity& e, double t) {
  if (t < e.spawn_time) {
    throw std::domain_error("position_of: time precedes spawn");
  }
  return e.spawn_z - e.speed * (t - e.spawn_time);
}

Vec3 center_of(const Entity& e, double t) {
  return {e.lane_offset, kTargetHeight, position_of(e, t)};
}

double travel_time(const Entity& e) { return e.spawn_z / e.speed; }

double arrival_time(const Entity& e) { return e.spawn_time + travel_time(e); }

std::int64_t crossing_tick(const Entity& e, int ticks_per_second) {
  const double tps = ticks_per_second;
  auto t_of = [tps](std::int64_t k) { return static_cast<double>(k) / tps; };
  std::int64_t k = static_cast<std::int64_t>(std::floor(arrival_time(e) * tps)) - 2;
  k = std::max<std::int64_t>(k, static_cast<std::int64_t>(std::floor(e.spawn_time * tps)));
  // The entity only exists from the first tick at or after its spawn time.
  while (t_of(k) < e.spawn_time) ++k;
  while (position_of(e, t_of(k + 1)) > 0.0) ++k;
  return k;
}

EntityId World::spawn(const SpawnEvent& ev) {
  if (ev.time > sim_time_) {
    throw std::logic_error("World::spawn: event lies in the future");
  }
  Entity e;
  e.id = next_id_++;
  e.kind = ev.kind;
  e.spawn_time = ev.time;
  e.lane_offset = ev.lane_offset;
  e.speed = ev.speed;
  e.z = position_of(e, sim_time_);
  entities_.push_back(e);
  return e.id;
}

const Entity* World::find(EntityId id) const {
  // Ids are assigned densely in push order.
  if (id < entities_.size() && entities_[id].id == id) return &entities_[id];
  return nullptr;
}

Entity* World::find_mutable(EntityId id) {
  return const_cast<Entity*>(static_cast<const World*>(this)->find(id));
}

void World::set_terminal(EntityId id, EntityStatus status) {
  Entity* e = find_mutable(id);
  if (e == nullptr) throw std::out_of_range("World::set_terminal: unknown entity");
  if (!e->in_flight() || status == EntityStatus::InFlight) {
    throw std::logic_error("World::set_terminal: entity already terminal");
  }
  e->status = status;
}

std::vector<EntityId> World::advance_to(double t) {
  if (t < sim_time_) throw std::domain_error("World::advance_to: time runs backwards");
  sim_time_ = t;
  std::vector<EntityId> crossed;
  for (Entity& e : entities_) {
    if (!e.in_flight()) continue;
    e.z = position_of(e, sim_time_);
    if (e.z <= 0.0) crossed.push_back(e.id);
  }
  return crossed;
}

std::size_t World::in_flight_count() const {
  return static_cast<std::size_t>(
      std::count_if(entities_.begin(), entities_.end(), [](const Entity& e) { return e.in_flight(); }));
}

}  // namespace virusboxing
