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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "virusboxing/interaction.hpp"

using namespace virusboxing;

namespace {

constexpr double kDt = 0.02;

double tick(int k) { return k / 50.0; }

// Right hand moving along +z; positions chosen so the 0.1 s windowed speed at
// tick k equals speeds[k] exactly (everything before the motion is at 0).
std::vector<PoseSample> stream_with_window_speeds(const std::vector<double>& speeds) {
  std::vector<PoseSample> out;
  std::vector<double> z;
  for (std::size_t k = 0; k < speeds.size(); ++k) {
    const double base = k >= 5 ? z[k - 5] : 0.0;
    const double elapsed = k >= 5 ? tick(static_cast<int>(k)) - tick(static_cast<int>(k) - 5) : 0.0;
    z.push_back(base + speeds[k] * elapsed);
    PoseSample s;
    s.time = tick(static_cast<int>(k));
    s.head_pos = {0, 1.7, 0};
    s.left_hand_pos = {-0.2, 1.35, 0.25};
    s.right_hand_pos = {0.2, 1.35, z.back()};
    out.push_back(s);
  }
  return out;
}

JabEvent jab_at(Hand hand, Vec3 pos, Vec3 dir = {0, 0, 1}) {
  return {1.0, hand, 1.5, pos, dir.normalized()};
}

// World at t = 10 with viruses parked at the requested depths.
struct Parked {
  EntityKind kind;
  double depth;
  double lane = 0.0;
};

World world_with(std::initializer_list<Parked> items, double now = 10.0) {
  World w;
  w.advance_to(now);
  for (const Parked& p : items) {
    const double speed = 5.0;
    w.spawn({now - (15.0 - p.depth) / speed, p.kind, p.lane, speed});
  }
  return w;
}

PoseSample head(double x, double y) {
  PoseSample s;
  s.head_pos = {x, y, 0};
  return s;
}

}  // namespace

TEST_CASE("hand_velocity: finite differences") {
  std::vector<TimedPosition> w = {{0.0, {0, 0, 0}}, {0.1, {0, 0, 0.12}}};
  CHECK(hand_velocity(w).speed == doctest::Approx(1.2));
  CHECK(hand_velocity(w).direction.z == doctest::Approx(1.0));
  std::vector<TimedPosition> still = {{0.0, {1, 2, 3}}, {0.1, {1, 2, 3}}};
  CHECK(hand_velocity(still).speed == 0.0);
  std::vector<TimedPosition> one = {{0.0, {1, 2, 3}}};
  CHECK(hand_velocity(one).speed == 0.0);
  std::vector<TimedPosition> same_time = {{0.5, {0, 0, 0}}, {0.5, {0, 0, 1}}};
  CHECK(hand_velocity(same_time).speed == 0.0);
}

TEST_CASE("detect_jab: ramp fires at the inclusive threshold tick") {
  auto s = stream_with_window_speeds({0, 0, 0, 0, 0, 0.8, 1.0, 1.4});
  const auto jab = detect_jab(s);
  REQUIRE(jab);
  CHECK(jab->time == tick(6));
  CHECK(jab->hand == Hand::Right);
  CHECK(jab->hand_speed == 1.0);
  CHECK(jab->direction.z == doctest::Approx(1.0));
}

TEST_CASE("detect_jab: sustained 0.9 m/s never fires") {
  std::vector<double> v(200, 0.9);
  auto s = stream_with_window_speeds(v);
  CHECK_FALSE(detect_jab(s));
}

TEST_CASE("detect_jab: refractory period merges crossings 0.1 s apart") {
  // Crossing at tick 6, drop below, cross again at tick 11 (0.1 s later).
  std::vector<double> v = {0, 0, 0, 0, 0, 0.5, 1.2, 0.5, 0.5, 0.5, 0.5, 1.2, 0.5};
  CHECK(detect_jabs(stream_with_window_speeds(v)).size() == 1);
  // A second crossing 0.3 s after the first counts.
  std::vector<double> w = {0, 0, 0, 0, 0, 0.5, 1.2, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5,
                           0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.2};
  CHECK(detect_jabs(stream_with_window_speeds(w)).size() == 2);
}

TEST_CASE("property: threshold monotonicity") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> speed(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double a = speed(gen), b = speed(gen);
    const double lo = std::min(a, b), hi = std::max(a, b);
    const bool fires_lo = detect_jab(stream_with_window_speeds({0, 0, 0, 0, 0, lo})).has_value();
    const bool fires_hi = detect_jab(stream_with_window_speeds({0, 0, 0, 0, 0, hi})).has_value();
    if (fires_lo) CHECK(fires_hi);
    CHECK(fires_lo == (lo >= 1.0));
  }
}

TEST_CASE("resolve_jab: documented cases") {
  TargetingPolicy rough_long{TargetingMode::Rough, PunchRange::Long};
  {
    World w = world_with({{EntityKind::BlueVirus, 12.0}, {EntityKind::BlueVirus, 6.0}});
    const auto r = resolve_jab(jab_at(Hand::Left, {-0.2, 1.4, 0.5}), w, rough_long, true);
    REQUIRE(std::holds_alternative<DestroyedVirus>(r));
    CHECK(std::get<DestroyedVirus>(r).id == 1);
  }
  {
    World w = world_with({{EntityKind::BlueVirus, 0.3}});
    CHECK(std::holds_alternative<WrongHand>(
        resolve_jab(jab_at(Hand::Right, {0.0, 1.4, 0.3}), w, rough_long, false)));
  }
  {
    World w = world_with({{EntityKind::RedVirus, 10.0}});
    CHECK(std::holds_alternative<NoTarget>(
        resolve_jab(jab_at(Hand::Right, {0.2, 1.4, 0.5}), w, rough_long, false)));
  }
  {
    World w = world_with({{EntityKind::RedVirus, 7.0}});
    TargetingPolicy rough_short{TargetingMode::Rough, PunchRange::Short};
    CHECK(std::holds_alternative<NoTarget>(
        resolve_jab(jab_at(Hand::Right, {0.2, 1.4, 0.5}), w, rough_short, true)));
  }
}

TEST_CASE("resolve_jab: melee radius and mixed colours") {
  TargetingPolicy p;
  World w = world_with({{EntityKind::BlueVirus, 0.45}, {EntityKind::RedVirus, 0.60}});
  // Blue is nearer, but the right hand skips to the red one.
  const auto r = resolve_jab(jab_at(Hand::Right, {0.0, 1.4, 0.2}), w, p, false);
  REQUIRE(std::holds_alternative<DestroyedVirus>(r));
  CHECK(std::get<DestroyedVirus>(r).id == 1);
  // 0.46 m away is out of reach.
  World far = world_with({{EntityKind::RedVirus, 0.66}});
  CHECK(std::holds_alternative<NoTarget>(
      resolve_jab(jab_at(Hand::Right, {0.0, 1.4, 0.2}), far, p, false)));
  // Destroyed entities are not candidates.
  World gone = world_with({{EntityKind::RedVirus, 0.3}});
  gone.set_terminal(0, EntityStatus::Destroyed);
  CHECK(std::holds_alternative<NoTarget>(
      resolve_jab(jab_at(Hand::Right, {0.0, 1.4, 0.2}), gone, p, false)));
}

TEST_CASE("resolve_jab: precise targeting needs the ray near the centre") {
  TargetingPolicy pt{TargetingMode::Precise, PunchRange::Long};
  World w = world_with({{EntityKind::RedVirus, 8.0, 0.4}});
  CHECK(std::holds_alternative<DestroyedVirus>(
      resolve_jab(jab_at(Hand::Right, {0.2, 1.4, 0.5}, {0.2 / 7.5, 0, 1}), w, pt, true)));
  CHECK(std::holds_alternative<NoTarget>(
      resolve_jab(jab_at(Hand::Right, {0.2, 1.4, 0.5}, {-0.1, 0, 1}), w, pt, true)));
}

TEST_CASE("property: PT candidates within RT, ranges nested") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> depth(0.05, 15.0), lane(-0.5, 0.5), u(-1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    World w;
    w.advance_to(20.0);
    for (int i = 0; i < 12; ++i) {
      const EntityKind kind = i % 2 ? EntityKind::RedVirus : EntityKind::BlueVirus;
      w.spawn({20.0 - (15.0 - depth(gen)) / 6.0, kind, lane(gen), 6.0});
    }
    const JabEvent jab = jab_at(trial % 2 ? Hand::Left : Hand::Right,
                                {0.2 * u(gen), 1.4 + 0.1 * u(gen), 0.3},
                                {0.05 * u(gen), 0.05 * u(gen), 1});
    auto set = [&](TargetingMode m, PunchRange r) {
      auto ids = jab_candidates(jab, w, {m, r}, true);
      std::sort(ids.begin(), ids.end());
      return ids;
    };
    for (PunchRange r : {PunchRange::Short, PunchRange::Medium, PunchRange::Long}) {
      const auto pt = set(TargetingMode::Precise, r);
      const auto rt = set(TargetingMode::Rough, r);
      CHECK(std::includes(rt.begin(), rt.end(), pt.begin(), pt.end()));
    }
    for (TargetingMode m : {TargetingMode::Precise, TargetingMode::Rough}) {
      const auto s = set(m, PunchRange::Short);
      const auto md = set(m, PunchRange::Medium);
      const auto l = set(m, PunchRange::Long);
      CHECK(std::includes(md.begin(), md.end(), s.begin(), s.end()));
      CHECK(std::includes(l.begin(), l.end(), md.begin(), md.end()));
    }
  }
}

TEST_CASE("classify_weave_pose: documented cases") {
  Calibration cal;
  CHECK(classify_weave_pose(head(0, 0.70 * 1.70), cal) == PoseClass::Squat);
  CHECK(classify_weave_pose(head(0, 1.70), cal) == PoseClass::Standing);
  CHECK(classify_weave_pose(head(0.25, 0.70 * 1.70), cal) == PoseClass::SquatLeanRight);
  CHECK(classify_weave_pose(head(-0.25, 0.70 * 1.70), cal) == PoseClass::SquatLeanLeft);
  CHECK(classify_weave_pose(head(0.25, 1.70), cal) == PoseClass::Standing);
  CHECK(classify_weave_pose(head(0, 0.75 * 1.70), cal) == PoseClass::Squat);
  CHECK(classify_weave_pose(head(0.20, 1.0), cal) == PoseClass::Squat);
}

TEST_CASE("calibration: capture and validation") {
  const auto cal = Calibration::capture(head(0.05, 1.82));
  CHECK(cal.standing_head_height == 1.82);
  CHECK(cal.center_x == 0.05);
  CHECK(classify_weave_pose(head(0.30, 1.2), cal) == PoseClass::SquatLeanRight);
  CHECK(classify_weave_pose(head(0.20, 1.2), cal) == PoseClass::Squat);
  Calibration bad;
  bad.squat_ratio = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.lean_threshold = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("property: pose classification is total and deterministic") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> x(-1, 1), y(0, 2.5);
  Calibration cal;
  for (int i = 0; i < 5000; ++i) {
    const auto s = head(x(gen), y(gen));
    const PoseClass a = classify_weave_pose(s, cal);
    CHECK(a == classify_weave_pose(s, cal));
    const bool squat = s.head_pos.y <= 0.75 * 1.70;
    if (!squat) CHECK(a == PoseClass::Standing);
    if (squat && s.head_pos.x > 0.20) CHECK(a == PoseClass::SquatLeanRight);
    if (squat && s.head_pos.x < -0.20) CHECK(a == PoseClass::SquatLeanLeft);
    if (squat && std::abs(s.head_pos.x) <= 0.20) CHECK(a == PoseClass::Squat);
  }
}

TEST_CASE("resolve_cell_pass: avoidance table") {
  Entity flat, right, left;
  flat.kind = EntityKind::FlatCell;
  right.kind = EntityKind::RightTiltCell;
  left.kind = EntityKind::LeftTiltCell;
  CHECK(resolve_cell_pass(flat, PoseClass::Squat) == CellOutcome::Avoided);
  CHECK(resolve_cell_pass(right, PoseClass::Squat) == CellOutcome::Collided);
  CHECK(resolve_cell_pass(left, PoseClass::SquatLeanLeft) == CellOutcome::Avoided);
  CHECK(resolve_cell_pass(flat, PoseClass::Standing) == CellOutcome::Collided);
  CHECK(resolve_cell_pass(right, PoseClass::SquatLeanRight) == CellOutcome::Avoided);
  CHECK(resolve_cell_pass(left, PoseClass::SquatLeanRight) == CellOutcome::Collided);

  const PoseClass all[] = {PoseClass::Standing, PoseClass::Squat, PoseClass::SquatLeanLeft,
                           PoseClass::SquatLeanRight};
  // Flat avoidance set strictly contains each tilted set.
  for (EntityKind tilt : {EntityKind::RightTiltCell, EntityKind::LeftTiltCell}) {
    int tilt_n = 0, flat_n = 0;
    for (PoseClass p : all) {
      if (avoids(tilt, p)) CHECK(avoids(EntityKind::FlatCell, p));
      tilt_n += avoids(tilt, p);
      flat_n += avoids(EntityKind::FlatCell, p);
    }
    CHECK(flat_n > tilt_n);
  }
}

TEST_CASE("pose trace: write then read round-trips") {
  std::vector<PoseSample> samples = stream_with_window_speeds({0, 0, 0, 0, 0, 0.8, 1.0, 1.4});
  samples[3].buttons = kButtonA;
  samples[4].head_pos = {0.123456789, 1.1, -0.3};
  std::stringstream io;
  write_pose_trace(io, samples);
  const auto back = read_pose_trace(io);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].time == samples[i].time);
    CHECK(back[i].head_pos == samples[i].head_pos);
    CHECK(back[i].left_hand_pos == samples[i].left_hand_pos);
    CHECK(back[i].right_hand_pos == samples[i].right_hand_pos);
    CHECK(back[i].buttons == samples[i].buttons);
  }
  CHECK(detect_jab(back)->time == tick(6));
}

TEST_CASE("pose trace: malformed or out-of-order lines are rejected") {
  std::istringstream bad_json("{\"time\":0.0,\"head_pos\":[0,1.7,0]\n");
  CHECK_THROWS(read_pose_trace(bad_json));
  std::istringstream backwards(
      "{\"time\":0.1,\"head_pos\":[0,1.7,0],\"left_hand_pos\":[0,0,0],\"right_hand_pos\":[0,0,0],"
      "\"buttons\":[]}\n"
      "{\"time\":0.0,\"head_pos\":[0,1.7,0],\"left_hand_pos\":[0,0,0],\"right_hand_pos\":[0,0,0],"
      "\"buttons\":[]}\n");
  CHECK_THROWS(read_pose_trace(backwards));
}
