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

#include "virusboxing/physiology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace virusboxing {

void HeartRateParams::validate() const {
  if (!(hr_rest > 0.0 && hr_rest < hr_max)) {
    throw std::invalid_argument("heart rate: require 0 < hr_rest < hr_max");
  }
  if (!(tau_rise > 0.0 && tau_decay > 0.0)) {
    throw std::invalid_argument("heart rate: time constants must be positive");
  }
}

double intensity_of(PhaseKind phase, double effort) {
  const double e = std::clamp(effort, 0.0, 1.0);
  switch (phase) {
    case PhaseKind::Sprint: return e;
    case PhaseKind::LowIntensity:
    case PhaseKind::Cooldown: return kLowIntensityFactor * e;
    case PhaseKind::Ended: return 0.0;
  }
  return 0.0;
}

double workload_scale(const SpawnModulation& mod) {
  return std::sqrt(mod.interval_scale() * mod.speed_scale());
}

PhysioState hr_step(PhysioState s, double intensity, const HeartRateParams& p, double dt) {
  const double i = std::clamp(intensity, 0.0, 1.0);
  const double target = p.hr_rest + i * (p.hr_max - p.hr_rest);
  const double tau = target > s.hr ? p.tau_rise : p.tau_decay;
  // Explicit Euler; dt/tau is far below 1 so the update never overshoots.
  const double alpha = std::min(1.0, dt / tau);
  s.hr = std::clamp(s.hr + alpha * (target - s.hr), p.hr_rest, p.hr_max);
  return s;
}

PhysioState kcal_step(PhysioState s, double dt) {
  s.kcal += kKcalPerBeatSecond * s.hr * dt;
  return s;
}

PidController::PidController(PidGains gains, double output_limit)
    : gains_(gains), output_limit_(output_limit) {
  if (!(output_limit > 0.0)) throw std::invalid_argument("PidController: limit must be positive");
}

void PidController::reset() {
  integral_ = 0.0;
  prev_error_ = 0.0;
  primed_ = false;
}

double PidController::step(double setpoint, double measured, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("PidController::step: dt must be positive");
  const double error = setpoint - measured;
  const double derivative = primed_ ? (error - prev_error_) / dt : 0.0;
  prev_error_ = error;
  primed_ = true;

  const double unclamped_before =
      gains_.kp * error + gains_.ki * integral_ + gains_.kd * derivative;
  const bool pushing_high = unclamped_before >= output_limit_ && error > 0.0;
  const bool pushing_low = unclamped_before <= -output_limit_ && error < 0.0;
  if (!pushing_high && !pushing_low) {
    integral_ += error * dt;
    if (gains_.ki > 0.0) {
      const double bound = output_limit_ / gains_.ki;
      integral_ = std::clamp(integral_, -bound, bound);
    }
  }
  const double u = gains_.kp * error + gains_.ki * integral_ + gains_.kd * derivative;
  return std::clamp(u, -output_limit_, output_limit_);
}

SpawnModulation apply_modulation(double u) {
  const double c = std::clamp(u, -kPidOutputLimit, kPidOutputLimit);
  const double scale = std::exp2(c);
  return {scale, scale};
}

}  // namespace virusboxing
