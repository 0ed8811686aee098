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

#include <random>

#include "virusboxing/metrics.hpp"
#include "virusboxing/progression.hpp"

using namespace virusboxing;

namespace {

ProgressionState with_energy(int e) {
  ProgressionState s;
  s.energy = e;
  return s;
}

}  // namespace

TEST_CASE("on_virus_destroyed: energy accrual") {
  CHECK(on_virus_destroyed(with_energy(9), 1.0).energy == 10);
  CHECK(on_virus_destroyed(with_energy(10), 1.0).energy == 10);
  auto s = with_energy(10);
  s = activate_empowerment(s, 5.0, true).state;
  const auto after = on_virus_destroyed(s, 6.0);
  CHECK(after.energy == 0);
  CHECK(after.viruses_destroyed == 1);
}

TEST_CASE("activate_empowerment: conditions and refusals") {
  const auto ok = activate_empowerment(with_energy(10), 12.0, true);
  REQUIRE(ok.activated());
  CHECK(ok.state.energy == 0);
  CHECK(*ok.state.empowered_until == 22.0);
  CHECK(ok.state.empowered_at(12.0));
  CHECK(ok.state.empowered_at(21.98));
  CHECK_FALSE(ok.state.empowered_at(22.0));

  CHECK(activate_empowerment(with_energy(5), 0.0, true).refused == RefusedReason::NotFull);
  CHECK(activate_empowerment(with_energy(10), 0.0, false).refused == RefusedReason::NoPress);
  auto again = ok.state;
  again.energy = 10;
  CHECK(activate_empowerment(again, 15.0, true).refused == RefusedReason::AlreadyEmpowered);
  // Refusal order: no press first, then re-entrance, then energy.
  CHECK(activate_empowerment(ok.state, 15.0, false).refused == RefusedReason::NoPress);
  CHECK(activate_empowerment(ok.state, 15.0, true).refused == RefusedReason::AlreadyEmpowered);
}

TEST_CASE("tick_empowerment: right-open window") {
  ProgressionState s;
  s.empowered_until = 30.0;
  CHECK(tick_empowerment(s, 30.0).empowered_until == std::nullopt);
  CHECK(tick_empowerment(s, 30.0 - 0.02).empowered_until == 30.0);
  ProgressionState never;
  CHECK(tick_empowerment(never, 100.0) == never);
}

TEST_CASE("empowerment lasts exactly 500 ticks from any activation tick") {
  for (int k = 0; k < 24000; ++k) {
    const double t = k / 50.0;
    auto s = activate_empowerment(with_energy(10), t, true).state;
    // Last empowered tick is k + 499, first free tick k + 500.
    REQUIRE(tick_empowerment(s, (k + 499) / 50.0).empowered_until.has_value());
    REQUIRE_FALSE(tick_empowerment(s, (k + 500) / 50.0).empowered_until.has_value());
  }
}

TEST_CASE("property: random event sequences keep the state machine invariants") {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int run = 0; run < 200; ++run) {
    ProgressionState s;
    std::optional<double> activated_at;
    for (int k = 0; k < 3000; ++k) {
      const double t = k / 50.0;
      const int before = s.energy;
      const bool empowered = s.empowered_at(t);
      switch (pick(gen)) {
        case 0:
        case 1:
          s = on_virus_destroyed(s, t);
          if (empowered) CHECK(s.energy == before);
          else CHECK(s.energy == std::min(before + 1, 10));
          break;
        case 2: s = on_virus_missed(s); break;
        case 3: s = on_cell_avoided(s); break;
        case 4: s = on_cell_collided(s); break;
        case 5: {
          const auto r = activate_empowerment(s, t, true);
          CHECK(r.activated() == (before == 10 && !empowered));
          if (r.activated()) {
            activated_at = t;
            CHECK(r.state.energy == 0);
          }
          s = r.state;
          break;
        }
        default: s = on_wrong_hand(s); break;
      }
      REQUIRE(s.energy >= 0);
      REQUIRE(s.energy <= 10);
      if (s.empowered_at(t)) REQUIRE(s.energy == 0);
      const double next = (k + 1) / 50.0;
      const bool was = s.empowered_until.has_value();
      s = tick_empowerment(s, next);
      if (was && !s.empowered_until) {
        REQUIRE(activated_at);
        CHECK(next - *activated_at == doctest::Approx(10.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("summary: percentages") {
  ProgressionState s;
  s.viruses_missed = 7;
  s.viruses_destroyed = 93;
  auto m = summary(s, {100, 30});
  CHECK(*m.miss_pct == doctest::Approx(7.0));
  CHECK(*m.cell_hit_pct == 0.0);
  CHECK_FALSE(summary(ProgressionState{}, {0, 0}).miss_pct);
  CHECK_FALSE(summary(ProgressionState{}, {0, 0}).cell_hit_pct);
}

TEST_CASE("metrics: serialization shapes") {
  SummaryMetrics m;
  m.seed = 3;
  m.viruses_spawned = 4;
  m.viruses_missed = 1;
  m.finalize_percentages();
  const auto json = summary_json(m);
  CHECK(json.find("\"miss_pct\":25.000000") != std::string::npos);
  CHECK(json.find("\"cell_hit_pct\":null") != std::string::npos);
  const auto row = summary_csv_row(m);
  CHECK(row.rfind("3,4,", 0) == 0);
  const std::vector<SummaryMetrics> runs = {m, m};
  const auto agg = aggregate(runs);
  CHECK(agg.sessions == 2);
  CHECK(*agg.miss_pct == 25.0);
  CHECK(aggregate_csv_row(agg).rfind("mean,", 0) == 0);
}
