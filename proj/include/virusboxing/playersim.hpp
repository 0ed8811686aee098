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

// Synthetic players. A player sees every spawn the moment it appears, picks a
// response (a jab for a virus, a weave for a cell) according to its skill
// profile, and renders those responses as a 50 Hz pose stream that the
// interaction module then reads like any recorded trace.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "virusboxing/interaction.hpp"
#include "virusboxing/physiology.hpp"
#include "virusboxing/rng.hpp"
#include "virusboxing/world.hpp"

namespace virusboxing {

enum class EmpowerPolicy : std::uint8_t { ActivateImmediately, Never, DuringSprintOnly };

std::string_view to_string(EmpowerPolicy p);
std::optional<EmpowerPolicy> empower_policy_from_string(std::string_view s);

struct PlayerProfile {
  std::string name = "mid";
  double reaction_time = 0.35;    // s
  double punch_speed_mean = 1.6;  // m/s
  double punch_speed_sd = 0.3;
  double aim_error_sd = 0.15;     // m, per axis
  double correct_hand_prob = 0.97;
  double weave_reliability = 0.97;
  EmpowerPolicy empower_policy = EmpowerPolicy::ActivateImmediately;
  double effort = 0.60;
  HeartRateParams heart;

  void validate() const;

  bool operator==(const PlayerProfile&) const = default;
};

// mid, expert, regular, sedentary.
std::span<const PlayerProfile> builtin_profiles();
std::optional<PlayerProfile> builtin_profile(std::string_view name);

// JSON document: {"profiles": [ {...}, ... ]}. Missing fields take the
// defaults of PlayerProfile.
std::vector<PlayerProfile> load_profiles(std::istream& in);
std::string profiles_json(std::span<const PlayerProfile> profiles);

// Body geometry shared by the planner and the stream generator.
inline constexpr double kHandRestDepth = 0.25;
inline constexpr double kHandRestHeight = 1.35;
inline constexpr double kHandRestLateral = 0.20;
inline constexpr double kMeleeHitDepth = 0.55;  // virus depth the player punches at
inline constexpr double kGuardSpeed = 0.9;      // m/s, below the jab threshold
inline constexpr int kStrikeTicks = 8;
inline constexpr int kHoldTicks = 3;
inline constexpr int kQuietTicks = 5;
inline constexpr double kEmpowerMargin = 0.1;   // s left on the clock for an empowered plan
inline constexpr double kWeaveLead = 0.30;      // s held before the crossing tick
inline constexpr double kWeaveLag = 0.10;
inline constexpr double kWeaveDepthMargin = 0.10;  // squat below threshold, fraction of height
inline constexpr double kWeaveLeanMargin = 0.10;   // m past the lean threshold

Vec3 hand_rest(Hand h);

struct JabPlan {
  EntityId target = 0;
  Hand hand = Hand::Left;
  double strike_speed = 0.0;
  bool empowered = false;
  std::int64_t visible_tick = 0;
  std::int64_t strike_tick = 0;
  std::int64_t detect_tick = 0;
  Vec3 ready_point;  // where the hand waits before the strike
  Vec3 aim_point;    // where the strike is headed
};

struct WeavePlan {
  EntityId target = 0;
  PoseClass pose = PoseClass::Squat;
  std::int64_t visible_tick = 0;
  std::int64_t cross_tick = 0;
};

struct NoReaction {
  EntityId target = 0;
};

using ReactionPlan = std::variant<JabPlan, WeavePlan, NoReaction>;

struct PlanContext {
  int ticks_per_second = 50;
  std::int64_t now_tick = 0;
  TargetingPolicy policy;
  std::optional<double> empowered_until;
  // Earliest tick each hand may begin a fresh empowered strike.
  std::array<std::int64_t, 2> hand_free_tick{0, 0};
};

// Ticks from strike start until the windowed speed first reaches the jab
// threshold, for a hand leaving rest at `speed`. Five when it never does.
int ticks_to_threshold(double speed, int ticks_per_second);

// Draws a response for a freshly spawned entity. The draws never depend on the
// targeting policy, so two sessions sharing a seed stay in lock-step whatever
// their targeting policy.
ReactionPlan plan_reaction(const PlayerProfile& profile, const Entity& spawned,
                           const PlanContext& ctx, Rng& rng);

struct PlayerView {
  int energy = 0;
  bool empowered = false;
  PhaseKind phase = PhaseKind::LowIntensity;
};

// Turns plans into pose samples one tick at a time.
class PoseStreamGenerator {
 public:
  PoseStreamGenerator(const PlayerProfile& profile, const Calibration& body, int ticks_per_second);

  void add(const ReactionPlan& plan);

  PoseSample next(std::int64_t tick, const PlayerView& view);

 private:
  struct HandState {
    Vec3 pos;
    std::vector<JabPlan> pending;  // sorted by strike tick
    std::optional<JabPlan> active;
    Vec3 strike_origin;
    Vec3 strike_velocity;
    std::int64_t strike_start = 0;
  };

  Vec3 step_hand(HandState& hand, Hand which, std::int64_t tick);
  Vec3 head_at(std::int64_t tick);
  bool wants_press(const PlayerView& view) const;

  PlayerProfile profile_;
  Calibration body_;
  int ticks_per_second_;
  double dt_;
  std::array<HandState, 2> hands_;
  std::vector<WeavePlan> weaves_;
};

std::vector<PoseSample> generate_stream(const PlayerProfile& profile, const Calibration& body,
                                        std::span<const ReactionPlan> plans,
                                        std::int64_t first_tick, std::int64_t last_tick,
                                        int ticks_per_second = 50,
                                        const PlayerView& view = {});

// Planner plus generator with hand-availability bookkeeping.
class PlayerSim {
 public:
  PlayerSim(PlayerProfile profile, Calibration body, int ticks_per_second);

  ReactionPlan react(const Entity& spawned, std::int64_t now_tick, const TargetingPolicy& policy,
                     std::optional<double> empowered_until, Rng& rng);

  PoseSample sample(std::int64_t tick, const PlayerView& view) { return stream_.next(tick, view); }

  const PlayerProfile& profile() const { return profile_; }

 private:
  PlayerProfile profile_;
  Calibration body_;
  int ticks_per_second_;
  std::array<std::int64_t, 2> hand_free_tick_{0, 0};
  PoseStreamGenerator stream_;
};

}  // namespace virusboxing
