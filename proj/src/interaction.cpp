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

#include "virusboxing/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace virusboxing {
namespace {

// Sample times come from tick / rate divisions; allow for the last bit.
constexpr double kTimeEpsilon = 1e-9;

constexpr std::size_t hand_index(Hand h) { return h == Hand::Left ? 0 : 1; }

}  // namespace

std::string_view to_string(TargetingMode m) { return m == TargetingMode::Precise ? "pt" : "rt"; }

std::string_view to_string(PunchRange r) {
  switch (r) {
    case PunchRange::Short: return "short";
    case PunchRange::Medium: return "medium";
    case PunchRange::Long: return "long";
  }
  return "long";
}

std::optional<TargetingMode> targeting_mode_from_string(std::string_view s) {
  if (s == "pt" || s == "precise") return TargetingMode::Precise;
  if (s == "rt" || s == "rough") return TargetingMode::Rough;
  return std::nullopt;
}

std::optional<PunchRange> punch_range_from_string(std::string_view s) {
  if (s == "short" || s == "sr") return PunchRange::Short;
  if (s == "medium" || s == "mr") return PunchRange::Medium;
  if (s == "long" || s == "lr") return PunchRange::Long;
  return std::nullopt;
}

HandVelocity hand_velocity(std::span<const TimedPosition> window) {
  if (window.size() < 2) return {};
  const TimedPosition& first = window.front();
  const TimedPosition& last = window.back();
  const double elapsed = last.time - first.time;
  if (elapsed <= 0.0) return {};
  const Vec3 disp = last.pos - first.pos;
  return {disp.norm() / elapsed, disp.normalized()};
}

std::optional<JabEvent> JabDetector::push_hand(Hand hand, double time, const Vec3& pos) {
  HandTrack& track = tracks_[hand_index(hand)];
  track.window.push_back({time, pos});
  const auto stale = std::find_if(track.window.begin(), track.window.end(), [&](const TimedPosition& p) {
    return p.time >= time - kVelocityWindow - kTimeEpsilon;
  });
  track.window.erase(track.window.begin(), stale);
  const HandVelocity v = hand_velocity(track.window);

  const bool rising = track.prev_speed < kJabSpeedThreshold && v.speed >= kJabSpeedThreshold;
  track.prev_speed = v.speed;
  if (!rising) return std::nullopt;
  if (track.last_jab && time - *track.last_jab < kJabRefractory - kTimeEpsilon) return std::nullopt;

  track.last_jab = time;
  return JabEvent{time, hand, v.speed, pos, v.direction};
}

std::vector<JabEvent> JabDetector::push(const PoseSample& sample) {
  std::vector<JabEvent> out;
  for (Hand h : {Hand::Left, Hand::Right}) {
    if (auto jab = push_hand(h, sample.time, sample.hand(h))) out.push_back(*jab);
  }
  return out;
}

std::vector<JabEvent> detect_jabs(std::span<const PoseSample> stream) {
  JabDetector detector;
  std::vector<JabEvent> all;
  for (const PoseSample& s : stream) {
    for (const JabEvent& j : detector.push(s)) all.push_back(j);
  }
  return all;
}

std::optional<JabEvent> detect_jab(std::span<const PoseSample> stream) {
  JabDetector detector;
  for (const PoseSample& s : stream) {
    auto jabs = detector.push(s);
    if (!jabs.empty()) return jabs.front();
  }
  return std::nullopt;
}

std::string_view to_string(const HitResult& r) {
  if (std::holds_alternative<DestroyedVirus>(r)) return "destroyed";
  if (std::holds_alternative<WrongHand>(r)) return "wrong_hand";
  return "no_target";
}

std::vector<EntityId> jab_candidates(const JabEvent& jab, const World& world,
                                     const TargetingPolicy& policy, bool empowered) {
  struct Scored {
    double distance;
    EntityId id;
  };
  std::vector<Scored> scored;
  const double t = world.sim_time();
  for (const Entity& e : world.entities()) {
    if (!e.in_flight() || !is_virus(e.kind)) continue;
    const Vec3 center = center_of(e, t);
    if (!empowered) {
      const double d = distance(jab.hand_pos, center);
      if (d <= kMeleeRadius) scored.push_back({d, e.id});
      continue;
    }
    const double depth = center.z;
    if (depth > policy.range_m()) continue;
    if (policy.mode == TargetingMode::Precise &&
        distance_to_ray(jab.hand_pos, jab.direction, center) > kPreciseRayTolerance) {
      continue;
    }
    scored.push_back({depth, e.id});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.distance < b.distance; });
  std::vector<EntityId> ids;
  ids.reserve(scored.size());
  for (const Scored& s : scored) ids.push_back(s.id);
  return ids;
}

HitResult resolve_jab(const JabEvent& jab, const World& world, const TargetingPolicy& policy,
                      bool empowered) {
  bool wrong_colour_seen = false;
  for (EntityId id : jab_candidates(jab, world, policy, empowered)) {
    const Entity* e = world.find(id);
    if (required_hand(e->kind) == jab.hand) return DestroyedVirus{id};
    wrong_colour_seen = true;
  }
  if (wrong_colour_seen) return WrongHand{};
  return NoTarget{};
}

std::string_view to_string(PoseClass p) {
  switch (p) {
    case PoseClass::Standing: return "standing";
    case PoseClass::Squat: return "squat";
    case PoseClass::SquatLeanLeft: return "squat_lean_left";
    case PoseClass::SquatLeanRight: return "squat_lean_right";
  }
  return "standing";
}

void Calibration::validate() const {
  if (!(standing_head_height > 0.0)) {
    throw std::invalid_argument("calibration: standing_head_height must be positive");
  }
  if (!(squat_ratio > 0.0 && squat_ratio < 1.0)) {
    throw std::invalid_argument("calibration: squat_ratio must lie in (0, 1)");
  }
  if (!(lean_threshold > 0.0)) {
    throw std::invalid_argument("calibration: lean_threshold must be positive");
  }
}

Calibration Calibration::capture(const PoseSample& standing, double squat_ratio,
                                 double lean_threshold) {
  Calibration cal{standing.head_pos.y, squat_ratio, lean_threshold, standing.head_pos.x};
  cal.validate();
  return cal;
}

PoseClass classify_weave_pose(const PoseSample& sample, const Calibration& cal) {
  const bool squat = sample.head_pos.y <= cal.squat_ratio * cal.standing_head_height;
  if (!squat) return PoseClass::Standing;
  const double lateral = sample.head_pos.x - cal.center_x;
  if (lateral > cal.lean_threshold) return PoseClass::SquatLeanRight;
  if (lateral < -cal.lean_threshold) return PoseClass::SquatLeanLeft;
  return PoseClass::Squat;
}

bool avoids(EntityKind cell, PoseClass pose) {
  switch (cell) {
    case EntityKind::FlatCell: return pose != PoseClass::Standing;
    case EntityKind::RightTiltCell: return pose == PoseClass::SquatLeanRight;
    case EntityKind::LeftTiltCell: return pose == PoseClass::SquatLeanLeft;
    default: throw std::invalid_argument("avoids: entity is not a blood cell");
  }
}

CellOutcome resolve_cell_pass(const Entity& cell, PoseClass pose) {
  return avoids(cell.kind, pose) ? CellOutcome::Avoided : CellOutcome::Collided;
}

}  // namespace virusboxing
