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

// Heart-rate response, energy expenditure, and the PID loop that modulates
// spawn pressure to steer heart rate toward a setpoint during sprints.

#include "virusboxing/protocol.hpp"

namespace virusboxing {

struct HeartRateParams {
  double hr_rest = 60.0;
  double hr_max = 190.0;
  double tau_rise = 30.0;
  double tau_decay = 60.0;

  void validate() const;

  static HeartRateParams regular_exerciser() { return {60.0, 190.0, 30.0, 60.0}; }
  static HeartRateParams sedentary() { return {70.0, 195.0, 30.0, 60.0}; }

  bool operator==(const HeartRateParams&) const = default;
};

struct PhysioState {
  double hr = 60.0;
  double kcal = 0.0;
};

inline constexpr double kLowIntensityFactor = 0.45;

// kcal per (bpm * s): a 420 s session averaging 126 bpm burns 44 kcal.
inline constexpr double kKcalPerBeatSecond = 44.0 / (126.0 * 420.0);

// Sprint demands full effort; low intensity and cooldown 0.45 of it.
double intensity_of(PhaseKind phase, double effort);

// Extra physical load from modulated spawning: geometric mean of the two
// scales, so identity modulation leaves intensity unchanged.
double workload_scale(const SpawnModulation& mod);

// First-order approach to hr_rest + intensity * (hr_max - hr_rest) with
// tau_rise going up and tau_decay coming down, clamped to [hr_rest, hr_max].
PhysioState hr_step(PhysioState s, double intensity, const HeartRateParams& p, double dt);

PhysioState kcal_step(PhysioState s, double dt);

inline constexpr double kPidOutputLimit = 1.0;

struct PidGains {
  double kp = 0.08;
  double ki = 0.01;
  double kd = 0.0;

  bool operator==(const PidGains&) const = default;
};

class PidController {
 public:
  PidController() = default;
  explicit PidController(PidGains gains, double output_limit = kPidOutputLimit);

  // u = kp*e + ki*integral + kd*de/dt with e = setpoint - measured, clamped to
  // +-output_limit. The integral is held when the output is saturated in the
  // error's direction and bounded so ki*integral alone cannot exceed the limit.
  double step(double setpoint, double measured, double dt);

  void reset();

  const PidGains& gains() const { return gains_; }
  double integral() const { return integral_; }
  double prev_error() const { return prev_error_; }

 private:
  PidGains gains_;
  double output_limit_ = kPidOutputLimit;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
  bool primed_ = false;
};

// u -> (2^u, 2^u) with u clamped to the controller limit: 0 is identity,
// +1 doubles spawn pressure, -1 halves it.
SpawnModulation apply_modulation(double u);

}  // namespace virusboxing
