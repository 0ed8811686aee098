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

#include "virusboxing/playersim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "json_io.hpp"
#include "virusboxing/progression.hpp"

namespace virusboxing {
namespace {

constexpr std::size_t idx(Hand h) { return h == Hand::Left ? 0 : 1; }
constexpr Hand other(Hand h) { return h == Hand::Left ? Hand::Right : Hand::Left; }

double tick_time(std::int64_t k, int tps) { return static_cast<double>(k) / tps; }

std::int64_t ceil_tick(double t, int tps) {
  auto k = static_cast<std::int64_t>(std::ceil(t * tps));
  while (tick_time(k, tps) < t) ++k;
  return k;
}

double truncated_normal(Rng& rng, double mean, double sd) {
  // Rejection keeps the shape; the cap only guards degenerate profiles.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double v = rng.normal(mean, sd);
    if (v >= 0.0) return v;
  }
  return 0.0;
}

PoseClass weave_for(EntityKind k) {
  switch (k) {
    case EntityKind::RightTiltCell: return PoseClass::SquatLeanRight;
    case EntityKind::LeftTiltCell: return PoseClass::SquatLeanLeft;
    default: return PoseClass::Squat;
  }
}

std::vector<PlayerProfile> make_builtins() {
  PlayerProfile mid;  // field defaults are the calibrated mid-skill player

  PlayerProfile expert;
  expert.name = "expert";
  expert.reaction_time = 0.25;
  expert.punch_speed_mean = 2.2;
  expert.punch_speed_sd = 0.25;
  expert.aim_error_sd = 0.08;
  expert.correct_hand_prob = 0.995;
  expert.weave_reliability = 1.0;

  PlayerProfile regular = mid;
  regular.name = "regular";
  regular.heart = HeartRateParams::regular_exerciser();

  PlayerProfile sedentary = mid;
  sedentary.name = "sedentary";
  sedentary.reaction_time = 0.40;
  sedentary.punch_speed_mean = 1.5;
  sedentary.aim_error_sd = 0.16;
  sedentary.correct_hand_prob = 0.96;
  sedentary.weave_reliability = 0.95;
  sedentary.effort = 0.62;
  sedentary.heart = HeartRateParams::sedentary();

  return {mid, expert, regular, sedentary};
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string("profile: ") + what + " must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(EmpowerPolicy p) {
  switch (p) {
    case EmpowerPolicy::ActivateImmediately: return "activate_immediately";
    case EmpowerPolicy::Never: return "never";
    case EmpowerPolicy::DuringSprintOnly: return "during_sprint_only";
  }
  return "never";
}

std::optional<EmpowerPolicy> empower_policy_from_string(std::string_view s) {
  for (EmpowerPolicy p : {EmpowerPolicy::ActivateImmediately, EmpowerPolicy::Never,
                          EmpowerPolicy::DuringSprintOnly}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

void PlayerProfile::validate() const {
  if (name.empty()) throw std::invalid_argument("profile: empty name");
  if (!(reaction_time >= 0.0)) throw std::invalid_argument("profile: reaction_time must be >= 0");
  if (!(punch_speed_mean > 0.0)) throw std::invalid_argument("profile: punch_speed_mean must be > 0");
  if (!(punch_speed_sd >= 0.0)) throw std::invalid_argument("profile: punch_speed_sd must be >= 0");
  if (!(aim_error_sd >= 0.0)) throw std::invalid_argument("profile: aim_error_sd must be >= 0");
  check_unit(correct_hand_prob, "correct_hand_prob");
  check_unit(weave_reliability, "weave_reliability");
  check_unit(effort, "effort");
  heart.validate();
}

std::span<const PlayerProfile> builtin_profiles() {
  static const std::vector<PlayerProfile> profiles = make_builtins();
  return profiles;
}

std::optional<PlayerProfile> builtin_profile(std::string_view name) {
  for (const PlayerProfile& p : builtin_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const PlayerProfile& p) {
  j = nlohmann::json{{"name", p.name},
                     {"reaction_time", p.reaction_time},
                     {"punch_speed_mean", p.punch_speed_mean},
                     {"punch_speed_sd", p.punch_speed_sd},
                     {"aim_error_sd", p.aim_error_sd},
                     {"correct_hand_prob", p.correct_hand_prob},
                     {"weave_reliability", p.weave_reliability},
                     {"empower_policy", std::string(to_string(p.empower_policy))},
                     {"effort", p.effort},
                     {"heart",
                      {{"hr_rest", p.heart.hr_rest},
                       {"hr_max", p.heart.hr_max},
                       {"tau_rise", p.heart.tau_rise},
                       {"tau_decay", p.heart.tau_decay}}}};
}

void from_json(const nlohmann::json& j, PlayerProfile& p) {
  PlayerProfile d;
  d.name = j.value("name", d.name);
  d.reaction_time = j.value("reaction_time", d.reaction_time);
  d.punch_speed_mean = j.value("punch_speed_mean", d.punch_speed_mean);
  d.punch_speed_sd = j.value("punch_speed_sd", d.punch_speed_sd);
  d.aim_error_sd = j.value("aim_error_sd", d.aim_error_sd);
  d.correct_hand_prob = j.value("correct_hand_prob", d.correct_hand_prob);
  d.weave_reliability = j.value("weave_reliability", d.weave_reliability);
  d.effort = j.value("effort", d.effort);
  if (j.contains("empower_policy")) {
    const auto s = j.at("empower_policy").get<std::string>();
    auto policy = empower_policy_from_string(s);
    if (!policy) throw std::invalid_argument("profile: unknown empower_policy '" + s + "'");
    d.empower_policy = *policy;
  }
  if (j.contains("heart")) {
    const auto& h = j.at("heart");
    d.heart.hr_rest = h.value("hr_rest", d.heart.hr_rest);
    d.heart.hr_max = h.value("hr_max", d.heart.hr_max);
    d.heart.tau_rise = h.value("tau_rise", d.heart.tau_rise);
    d.heart.tau_decay = h.value("tau_decay", d.heart.tau_decay);
  }
  d.validate();
  p = d;
}

std::vector<PlayerProfile> load_profiles(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  std::vector<PlayerProfile> out;
  for (const auto& item : doc.at("profiles")) out.push_back(item.get<PlayerProfile>());
  return out;
}

std::string profiles_json(std::span<const PlayerProfile> profiles) {
  nlohmann::ordered_json doc;
  doc["profiles"] = nlohmann::json::array();
  for (const PlayerProfile& p : profiles) doc["profiles"].push_back(nlohmann::ordered_json::parse(nlohmann::json(p).dump()));
  return doc.dump(2) + "\n";
}

Vec3 hand_rest(Hand h) {
  return {h == Hand::Left ? -kHandRestLateral : kHandRestLateral, kHandRestHeight, kHandRestDepth};
}

int ticks_to_threshold(double speed, int ticks_per_second) {
  const int window = static_cast<int>(std::lround(kVelocityWindow * ticks_per_second));
  for (int j = 1; j <= window; ++j) {
    if (speed * j / window >= kJabSpeedThreshold) return j;
  }
  return window;
}

ReactionPlan plan_reaction(const PlayerProfile& profile, const Entity& spawned,
                           const PlanContext& ctx, Rng& rng) {
  const int tps = ctx.ticks_per_second;
  const double dt = 1.0 / tps;
  const std::int64_t visible =
      std::max(ctx.now_tick, ceil_tick(spawned.spawn_time + profile.reaction_time, tps));

  if (!is_virus(spawned.kind)) {
    if (rng.uniform() >= profile.weave_reliability) return NoReaction{spawned.id};
    return WeavePlan{spawned.id, weave_for(spawned.kind), visible, crossing_tick(spawned, tps)};
  }

  const Hand needed = *required_hand(spawned.kind);
  JabPlan plan;
  plan.target = spawned.id;
  plan.hand = rng.uniform() < profile.correct_hand_prob ? needed : other(needed);
  plan.strike_speed = truncated_normal(rng, profile.punch_speed_mean, profile.punch_speed_sd);
  const Vec3 offset{rng.normal(0.0, profile.aim_error_sd), rng.normal(0.0, profile.aim_error_sd),
                    rng.normal(0.0, profile.aim_error_sd)};
  plan.visible_tick = visible;
  const int ramp = ticks_to_threshold(plan.strike_speed, tps);

  if (ctx.empowered_until) {
    const double reach = ctx.policy.range_m();
    const double t_in =
        spawned.spawn_time + std::max(0.0, (spawned.spawn_z - reach) / spawned.speed);
    const std::int64_t detect =
        std::max({ceil_tick(t_in + profile.reaction_time, tps), visible + ramp,
                  ctx.hand_free_tick[idx(plan.hand)] + ramp});
    const double t_detect = tick_time(detect, tps);
    if (t_detect < *ctx.empowered_until - kEmpowerMargin &&
        position_of(spawned, t_detect) > kMeleeHitDepth) {
      plan.empowered = true;
      plan.detect_tick = detect;
      plan.strike_tick = detect - ramp;
      plan.ready_point = hand_rest(plan.hand);
      plan.aim_point = center_of(spawned, t_detect) + Vec3{offset.x, offset.y, 0.0};
      return plan;
    }
  }

  // Melee: punch straight forward through the point where the virus will be
  // when it reaches hitting depth.
  std::int64_t detect = std::max(ctx.now_tick, ceil_tick(spawned.spawn_time, tps));
  detect = std::max(detect, ceil_tick(spawned.spawn_time +
                                          (spawned.spawn_z - kMeleeHitDepth) / spawned.speed,
                                      tps) - 1);
  while (position_of(spawned, tick_time(detect, tps)) > kMeleeHitDepth) ++detect;
  plan.empowered = false;
  plan.detect_tick = detect;
  plan.strike_tick = detect - ramp;
  plan.aim_point = center_of(spawned, tick_time(detect, tps)) + offset;
  plan.ready_point = plan.aim_point - Vec3{0.0, 0.0, plan.strike_speed * ramp * dt};
  return plan;
}

PoseStreamGenerator::PoseStreamGenerator(const PlayerProfile& profile, const Calibration& body,
                                         int ticks_per_second)
    : profile_(profile), body_(body), ticks_per_second_(ticks_per_second),
      dt_(1.0 / ticks_per_second) {
  hands_[idx(Hand::Left)].pos = hand_rest(Hand::Left);
  hands_[idx(Hand::Right)].pos = hand_rest(Hand::Right);
}

void PoseStreamGenerator::add(const ReactionPlan& plan) {
  if (const auto* jab = std::get_if<JabPlan>(&plan)) {
    auto& pending = hands_[idx(jab->hand)].pending;
    auto at = std::upper_bound(pending.begin(), pending.end(), *jab,
                               [](const JabPlan& a, const JabPlan& b) { return a.strike_tick < b.strike_tick; });
    pending.insert(at, *jab);
  } else if (const auto* weave = std::get_if<WeavePlan>(&plan)) {
    weaves_.push_back(*weave);
  }
}

Vec3 PoseStreamGenerator::step_hand(HandState& hand, Hand which, std::int64_t tick) {
  // Latest due strike wins; older due plans it preempts are abandoned.
  auto due_end = hand.pending.begin();
  std::optional<JabPlan> start;
  for (auto it = hand.pending.begin(); it != hand.pending.end() && it->strike_tick <= tick; ++it) {
    if (it->visible_tick <= tick) start = *it;
    due_end = std::next(it);
  }
  if (start) {
    hand.pending.erase(std::remove_if(hand.pending.begin(), due_end,
                                      [&](const JabPlan& p) { return p.visible_tick <= tick; }),
                       due_end);
    hand.active = start;
    hand.strike_origin = hand.pos;
    hand.strike_velocity = (start->aim_point - hand.pos).normalized() * start->strike_speed;
    hand.strike_start = tick;
  }

  if (hand.active) {
    const auto n = tick - hand.strike_start;
    if (n <= kStrikeTicks) {
      hand.pos = hand.strike_origin + hand.strike_velocity * (static_cast<double>(n) * dt_);
      return hand.pos;
    }
    if (n <= kStrikeTicks + kHoldTicks) return hand.pos;
    hand.active.reset();
  }

  Vec3 goal = hand_rest(which);
  for (const JabPlan& p : hand.pending) {
    if (p.visible_tick <= tick) {
      goal = p.ready_point;
      break;
    }
  }
  const Vec3 to_goal = goal - hand.pos;
  const double step = kGuardSpeed * dt_;
  const double d = to_goal.norm();
  hand.pos = d <= step ? goal : hand.pos + to_goal * (step / d);
  return hand.pos;
}

Vec3 PoseStreamGenerator::head_at(std::int64_t tick) {
  const auto lead = static_cast<std::int64_t>(std::lround(kWeaveLead * ticks_per_second_));
  const auto lag = static_cast<std::int64_t>(std::lround(kWeaveLag * ticks_per_second_));
  std::erase_if(weaves_, [&](const WeavePlan& w) { return w.cross_tick + lag < tick; });

  const WeavePlan* chosen = nullptr;
  std::int64_t best = 0;
  for (const WeavePlan& w : weaves_) {
    if (w.visible_tick > tick || tick < w.cross_tick - lead) continue;
    const std::int64_t gap = std::abs(w.cross_tick - tick);
    if (chosen == nullptr || gap <= best) {
      chosen = &w;
      best = gap;
    }
  }

  const double height = body_.standing_head_height;
  Vec3 head{body_.center_x, height, 0.0};
  if (chosen == nullptr) return head;
  head.y = (body_.squat_ratio - kWeaveDepthMargin) * height;
  const double lean = body_.lean_threshold + kWeaveLeanMargin;
  if (chosen->pose == PoseClass::SquatLeanRight) head.x += lean;
  if (chosen->pose == PoseClass::SquatLeanLeft) head.x -= lean;
  return head;
}

bool PoseStreamGenerator::wants_press(const PlayerView& view) const {
  if (view.empowered || view.energy < kMaxEnergy) return false;
  switch (profile_.empower_policy) {
    case EmpowerPolicy::ActivateImmediately: return true;
    case EmpowerPolicy::DuringSprintOnly: return view.phase == PhaseKind::Sprint;
    case EmpowerPolicy::Never: return false;
  }
  return false;
}

PoseSample PoseStreamGenerator::next(std::int64_t tick, const PlayerView& view) {
  PoseSample s;
  s.time = tick_time(tick, ticks_per_second_);
  s.head_pos = head_at(tick);
  s.left_hand_pos = step_hand(hands_[idx(Hand::Left)], Hand::Left, tick);
  s.right_hand_pos = step_hand(hands_[idx(Hand::Right)], Hand::Right, tick);
  if (wants_press(view)) s.buttons |= kButtonA;
  return s;
}

std::vector<PoseSample> generate_stream(const PlayerProfile& profile, const Calibration& body,
                                        std::span<const ReactionPlan> plans,
                                        std::int64_t first_tick, std::int64_t last_tick,
                                        int ticks_per_second, const PlayerView& view) {
  PoseStreamGenerator gen(profile, body, ticks_per_second);
  for (const ReactionPlan& p : plans) gen.add(p);
  std::vector<PoseSample> out;
  for (std::int64_t k = first_tick; k <= last_tick; ++k) out.push_back(gen.next(k, view));
  return out;
}

PlayerSim::PlayerSim(PlayerProfile profile, Calibration body, int ticks_per_second)
    : profile_(std::move(profile)), body_(body), ticks_per_second_(ticks_per_second),
      stream_(profile_, body_, ticks_per_second) {}

ReactionPlan PlayerSim::react(const Entity& spawned, std::int64_t now_tick,
                              const TargetingPolicy& policy, std::optional<double> empowered_until,
                              Rng& rng) {
  PlanContext ctx;
  ctx.ticks_per_second = ticks_per_second_;
  ctx.now_tick = now_tick;
  ctx.policy = policy;
  ctx.empowered_until = empowered_until;
  ctx.hand_free_tick = hand_free_tick_;
  ReactionPlan plan = plan_reaction(profile_, spawned, ctx, rng);
  if (const auto* jab = std::get_if<JabPlan>(&plan)) {
    const double reach = jab->strike_speed * kStrikeTicks / ticks_per_second_;
    const auto back = static_cast<std::int64_t>(std::ceil(reach / kGuardSpeed * ticks_per_second_));
    auto& free = hand_free_tick_[idx(jab->hand)];
    free = std::max(free, jab->strike_tick + kStrikeTicks + kHoldTicks + back + kQuietTicks);
  }
  stream_.add(plan);
  return plan;
}

}  // namespace virusboxing
