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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "virusboxing/entity.hpp"
#include "virusboxing/vec3.hpp"
#include "virusboxing/world.hpp"

namespace virusboxing {

inline constexpr double kJabSpeedThreshold = 1.0;  // m/s, inclusive
inline constexpr double kJabRefractory = 0.25;     // s, per hand
inline constexpr double kVelocityWindow = 0.1;     // s
inline constexpr double kMeleeRadius = 0.45;       // m
inline constexpr double kPreciseRayTolerance = 0.25;  // m

enum Button : std::uint8_t { kButtonNone = 0, kButtonA = 1 << 0 };

struct PoseSample {
  double time = 0.0;
  Vec3 head_pos;
  Vec3 left_hand_pos;
  Vec3 right_hand_pos;
  std::uint8_t buttons = kButtonNone;

  const Vec3& hand(Hand h) const { return h == Hand::Left ? left_hand_pos : right_hand_pos; }
  bool pressed(Button b) const { return (buttons & b) != 0; }
};

enum class TargetingMode : std::uint8_t { Precise, Rough };
enum class PunchRange : std::uint8_t { Short, Medium, Long };

constexpr double range_meters(PunchRange r) {
  switch (r) {
    case PunchRange::Short: return 5.0;
    case PunchRange::Medium: return 10.0;
    case PunchRange::Long: return 15.0;
  }
  return 15.0;
}

std::string_view to_string(TargetingMode m);
std::string_view to_string(PunchRange r);
std::optional<TargetingMode> targeting_mode_from_string(std::string_view s);
std::optional<PunchRange> punch_range_from_string(std::string_view s);

struct TargetingPolicy {
  TargetingMode mode = TargetingMode::Rough;
  PunchRange range = PunchRange::Long;

  double range_m() const { return range_meters(range); }
  bool operator==(const TargetingPolicy&) const = default;
};

struct JabEvent {
  double time = 0.0;
  Hand hand = Hand::Left;
  double hand_speed = 0.0;
  Vec3 hand_pos;
  Vec3 direction;  // unit
};

struct TimedPosition {
  double time = 0.0;
  Vec3 pos;
};

struct HandVelocity {
  double speed = 0.0;
  Vec3 direction;
};

// Backward difference between the oldest and newest sample of the window.
// Fewer than two samples, or zero elapsed time, reads as a still hand.
HandVelocity hand_velocity(std::span<const TimedPosition> window);

// Streaming jab detector. A jab fires on the first sample where a hand's
// windowed speed rises to the threshold from below, unless that hand fired
// within the refractory period.
class JabDetector {
 public:
  std::vector<JabEvent> push(const PoseSample& sample);

 private:
  struct HandTrack {
    std::vector<TimedPosition> window;
    double prev_speed = 0.0;
    std::optional<double> last_jab;
  };

  std::optional<JabEvent> push_hand(Hand hand, double time, const Vec3& pos);

  std::array<HandTrack, 2> tracks_;
};

std::vector<JabEvent> detect_jabs(std::span<const PoseSample> stream);

// First jab in the stream, if any.
std::optional<JabEvent> detect_jab(std::span<const PoseSample> stream);

struct DestroyedVirus {
  EntityId id = 0;
  bool operator==(const DestroyedVirus&) const = default;
};
struct WrongHand {
  bool operator==(const WrongHand&) const = default;
};
struct NoTarget {
  bool operator==(const NoTarget&) const = default;
};
using HitResult = std::variant<DestroyedVirus, WrongHand, NoTarget>;

std::string_view to_string(const HitResult& r);

// Viruses the jab could reach, ignoring colour, ordered nearest first.
// Exposed for the subset properties between policies.
std::vector<EntityId> jab_candidates(const JabEvent& jab, const World& world,
                                     const TargetingPolicy& policy, bool empowered);

HitResult resolve_jab(const JabEvent& jab, const World& world, const TargetingPolicy& policy,
                      bool empowered);

enum class PoseClass : std::uint8_t { Standing, Squat, SquatLeanLeft, SquatLeanRight };

std::string_view to_string(PoseClass p);

struct Calibration {
  double standing_head_height = 1.70;
  double squat_ratio = 0.75;
  double lean_threshold = 0.20;
  double center_x = 0.0;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;

  static Calibration capture(const PoseSample& standing, double squat_ratio = 0.75,
                             double lean_threshold = 0.20);
};

PoseClass classify_weave_pose(const PoseSample& sample, const Calibration& cal);

enum class CellOutcome : std::uint8_t { Avoided, Collided };

// Whether `pose` clears `cell`. Viruses are not cells; passing one throws.
bool avoids(EntityKind cell, PoseClass pose);
CellOutcome resolve_cell_pass(const Entity& cell, PoseClass pose);

// Pose traces: JSON lines, one sample per line with keys in declared order.
void write_pose_trace(std::ostream& out, std::span<const PoseSample> samples);
std::vector<PoseSample> read_pose_trace(std::istream& in);

}  // namespace virusboxing
