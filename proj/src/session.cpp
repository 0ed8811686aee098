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

#include "virusboxing/session.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "virusboxing/config.hpp"
#include "virusboxing/progression.hpp"
#include "virusboxing/protocol.hpp"
#include "virusboxing/world.hpp"

namespace virusboxing {
namespace {

// Spawn times accumulate interval sums; anything this close to a tick counts
// as on it.
constexpr double kSpawnSnap = 1e-9;

// Upper bound on the drain after the protocol ends. The slowest entity needs
// 15 / (5.7 * 0.5) s, far below this.
constexpr double kMaxDrainSeconds = 60.0;

double tick_time(std::int64_t k, int tps) {
  return static_cast<double>(k) / static_cast<double>(tps);
}

class Recorder {
 public:
  void add(std::int64_t tick, std::string line) { log_.records.push_back({tick, std::move(line)}); }
  SessionLog& log() { return log_; }

 private:
  SessionLog log_;
};

std::string jab_line(std::int64_t tick, const JabEvent& jab, const HitResult& r) {
  const auto* hit = std::get_if<DestroyedVirus>(&r);
  return fmt::format(R"({{"tick":{},"event":"jab","hand":"{}","speed":{},"result":"{}","id":{}}})",
                     tick, to_string(jab.hand), log_real(jab.hand_speed), to_string(r),
                     hit ? std::to_string(hit->id) : std::string("null"));
}

}  // namespace

void SessionConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("config: dt must be positive");
  const double inv = 1.0 / dt;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded || static_cast<long long>(rounded) % 10 != 0) {
    throw ConfigError(
        "config: 1/dt must be a whole multiple of 10 so ticks land on the 0.1 s velocity window");
  }
  if (!std::isfinite(hr_setpoint) || hr_setpoint <= 0.0) {
    throw ConfigError("config: hr_setpoint must be positive");
  }
  for (double g : {pid_gains.kp, pid_gains.ki, pid_gains.kd}) {
    if (!std::isfinite(g) || g < 0.0) throw ConfigError("config: PID gains must be non-negative");
  }
  try {
    profile.validate();
    calibration.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int SessionConfig::ticks_per_second() const { return static_cast<int>(std::lround(1.0 / dt)); }

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const TraceRow& r : rows) {
    out += fmt::format("{:.6f},{:.6f},{:.6f},{},{},{}\n", r.time, r.hr, r.kcal, to_string(r.phase),
                       r.energy, r.empowered ? 1 : 0);
  }
  return out;
}

SessionResult run_session(const SessionConfig& config) {
  config.validate();
  const int tps = config.ticks_per_second();
  const double dt = 1.0 / tps;
  const auto protocol_ticks = static_cast<std::int64_t>(std::llround(kSessionDuration * tps));
  const auto max_ticks =
      protocol_ticks + static_cast<std::int64_t>(std::llround(kMaxDrainSeconds * tps));
  const HeartRateParams& heart = config.profile.heart;

  Rng rng(config.seed);
  World world;
  PlayerSim player(config.profile, config.calibration, tps);
  ProgressionState prog;
  PhysioState phys{heart.hr_rest, 0.0};
  PidController pid(config.pid_gains);
  JabDetector detector;
  Calibration cal = config.calibration;
  std::optional<SpawnEvent> pending;
  std::optional<ProtocolPhase> last_phase;
  SpawnCounts spawned;
  double hr_sum = 0.0;
  double hr_max = 0.0;
  std::int64_t hr_samples = 0;
  double last_kcal = 0.0;

  SessionResult result;
  Recorder rec;
  rec.log().header =
      fmt::format(R"({{"version":"{}","seed":{},"config_hash":"{}"}})", kLogVersion, config.seed,
                  config_hash(config));
  result.trace.reserve(static_cast<std::size_t>(protocol_ticks + 1));
  result.trace.push_back({0.0, phys.hr, phys.kcal, phase_at(0.0).kind, 0, false, 1.0, 1.0});

  std::int64_t k = 0;
  for (;; ++k) {
    const double t = tick_time(k, tps);
    const bool protocol = k < protocol_ticks;
    if (!protocol && world.in_flight_count() == 0) {
      rec.add(k, fmt::format(R"({{"tick":{},"event":"drained","t":{}}})", k, log_real(t)));
      break;
    }
    if (k >= max_ticks) throw std::logic_error("run_session: entities failed to drain");

    // 1. phase and intensity control
    const ProtocolPhase phase = protocol ? phase_at(t) : ProtocolPhase{PhaseKind::Ended, 0, 0.0};
    if (!last_phase || last_phase->kind != phase.kind || last_phase->index != phase.index) {
      rec.add(k, fmt::format(R"({{"tick":{},"event":"phase","phase":"{}","index":{},"t":{}}})", k,
                             to_string(phase.kind), phase.index, log_real(t)));
      last_phase = phase;
    }
    SpawnModulation mod = SpawnModulation::identity();
    if (config.pid_enabled && phase.kind == PhaseKind::Sprint) {
      mod = apply_modulation(pid.step(config.hr_setpoint, phys.hr, dt));
    }

    // 2. spawns
    if (protocol) {
      const auto params = spawn_params(phase, mod);
      if (k == 0 && params) pending = next_spawn(rng, t, *params);
      while (pending && pending->time <= t + kSpawnSnap) {
        SpawnEvent ev = *pending;
        ev.time = std::min(ev.time, t);
        const EntityId id = world.spawn(ev);
        (is_virus(ev.kind) ? spawned.viruses : spawned.cells) += 1;
        rec.add(k, fmt::format(
                       R"({{"tick":{},"event":"spawn","id":{},"kind":"{}","t":{},"lane":{},"speed":{}}})",
                       k, id, to_string(ev.kind), log_real(ev.time), log_real(ev.lane_offset),
                       log_real(ev.speed)));
        const std::optional<double> until =
            prog.empowered_at(t) ? prog.empowered_until : std::nullopt;
        player.react(*world.find(id), k, config.targeting, until, rng);
        pending = params ? std::optional(next_spawn(rng, ev.time, *params)) : std::nullopt;
      }
    }

    // 3. player pose
    const PoseSample sample =
        player.sample(k, {prog.energy, prog.empowered_at(t), phase.kind});
    if (k == 0) cal = Calibration::capture(sample, cal.squat_ratio, cal.lean_threshold);

    // 4. activation, then jabs
    if (sample.pressed(kButtonA)) {
      const ActivationResult a = activate_empowerment(prog, t, true);
      if (a.activated()) {
        prog = a.state;
        rec.add(k, fmt::format(R"({{"tick":{},"event":"activate","until":{}}})", k,
                               log_real(*prog.empowered_until)));
      } else {
        rec.add(k, fmt::format(R"({{"tick":{},"event":"activate_refused","reason":"{}"}})", k,
                               to_string(*a.refused)));
      }
    }
    for (const JabEvent& jab : detector.push(sample)) {
      const HitResult r = resolve_jab(jab, world, config.targeting, prog.empowered_at(t));
      if (const auto* hit = std::get_if<DestroyedVirus>(&r)) {
        world.set_terminal(hit->id, EntityStatus::Destroyed);
        prog = on_virus_destroyed(prog, t);
      } else if (std::holds_alternative<WrongHand>(r)) {
        prog = on_wrong_hand(prog);
      }
      rec.add(k, jab_line(k, jab, r));
    }

    // 5. world advance and plane crossings
    const double t_next = tick_time(k + 1, tps);
    for (EntityId id : world.advance_to(t_next)) {
      const Entity& e = *world.find(id);
      std::string pose = "null";
      if (is_virus(e.kind)) {
        world.set_terminal(id, EntityStatus::Missed);
        prog = on_virus_missed(prog);
      } else {
        const PoseClass p = classify_weave_pose(sample, cal);
        pose = fmt::format("\"{}\"", to_string(p));
        if (resolve_cell_pass(e, p) == CellOutcome::Avoided) {
          world.set_terminal(id, EntityStatus::Passed);
          prog = on_cell_avoided(prog);
        } else {
          world.set_terminal(id, EntityStatus::Collided);
          prog = on_cell_collided(prog);
        }
      }
      rec.add(k, fmt::format(R"({{"tick":{},"event":"resolve","id":{},"kind":"{}","status":"{}","pose":{}}})",
                             k, id, to_string(e.kind), to_string(e.status), pose));
    }

    // 6. empowerment expiry
    const bool was_empowered = prog.empowered_until.has_value();
    prog = tick_empowerment(prog, t_next);
    if (was_empowered && !prog.empowered_until) {
      rec.add(k, fmt::format(R"({{"tick":{},"event":"empower_end","t":{}}})", k, log_real(t_next)));
    }

    // 7. physiology
    if (protocol) {
      const double intensity =
          std::min(1.0, intensity_of(phase.kind, config.profile.effort) * workload_scale(mod));
      phys = kcal_step(hr_step(phys, intensity, heart, dt), dt);
      result.trace.push_back({t_next, phys.hr, phys.kcal, phase.kind, prog.energy,
                              prog.empowered_at(t_next), mod.interval_scale(), mod.speed_scale()});
    }

    // 8. per-second samples and the protocol end marker
    if (protocol && (k + 1) % tps == 0) {
      const double hr = log_quantize(phys.hr);
      hr_sum += hr;
      hr_max = hr_samples == 0 ? hr : std::max(hr_max, hr);
      ++hr_samples;
      last_kcal = log_quantize(phys.kcal);
      rec.add(k, fmt::format(
                     R"({{"tick":{},"event":"hr","t":{},"hr":{},"kcal":{},"interval_scale":{},"speed_scale":{}}})",
                     k, log_real(t_next), log_real(phys.hr), log_real(phys.kcal),
                     log_real(mod.interval_scale()), log_real(mod.speed_scale())));
    }
    if (k + 1 == protocol_ticks) {
      rec.add(k + 1, fmt::format(R"({{"tick":{},"event":"end","t":{}}})", k + 1,
                                 log_real(tick_time(k + 1, tps))));
    }
  }

  result.final_tick = k;
  SummaryMetrics m = summary(prog, spawned);
  m.seed = config.seed;
  m.duration = log_quantize(kSessionDuration);
  m.hr_avg = hr_samples > 0 ? hr_sum / static_cast<double>(hr_samples) : 0.0;
  m.hr_max = hr_max;
  m.kcal = last_kcal;
  m.finalize_percentages();
  result.metrics = m;
  result.log = std::move(rec.log());
  return result;
}

VerifyResult replay_verify(const SessionLog& log, const SessionConfig& config) {
  VerifyResult out;
  LogHeader h;
  try {
    h = parse_log_header(log.header);
  } catch (const LogFormatError& e) {
    out.status = VerifyStatus::HeaderMismatch;
    out.message = e.what();
    return out;
  }
  const std::string hash = config_hash(config);
  if (h.version != kLogVersion || h.seed != config.seed || h.config_hash != hash) {
    out.status = VerifyStatus::HeaderMismatch;
    out.message = fmt::format("header mismatch: log has version {} seed {} hash {}, config gives "
                              "version {} seed {} hash {}",
                              h.version, h.seed, h.config_hash, kLogVersion, config.seed, hash);
    return out;
  }
  const SessionLog expected = run_session(config).log;
  if (log.header != expected.header) {
    out.status = VerifyStatus::HeaderMismatch;
    out.message = "header line differs from the canonical form";
    return out;
  }
  const std::size_t n = std::min(log.records.size(), expected.records.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (log.records[i].line != expected.records[i].line) {
      out.status = VerifyStatus::Divergence;
      out.tick = expected.records[i].tick;
      out.message = fmt::format("divergence at tick {} (record {})", *out.tick, i + 1);
      return out;
    }
  }
  if (log.records.size() != expected.records.size()) {
    out.status = VerifyStatus::Divergence;
    const bool short_log = log.records.size() < expected.records.size();
    out.tick = short_log ? expected.records[n].tick : log.records[n].tick;
    out.message = fmt::format("divergence at tick {}: log has {} records, replay has {}", *out.tick,
                              log.records.size(), expected.records.size());
  }
  return out;
}

}  // namespace virusboxing
