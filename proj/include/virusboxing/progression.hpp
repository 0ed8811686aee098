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

#include <cstdint>
#include <optional>
#include <string_view>

namespace virusboxing {

inline constexpr int kMaxEnergy = 10;
inline constexpr double kEmpowermentDuration = 10.0;  // s
// activation + 10 can round one ulp past the tick that ends the window.
inline constexpr double kEmpowermentTolerance = 1e-9;  // s

struct ProgressionState {
  int energy = 0;
  std::optional<double> empowered_until;

  std::int64_t viruses_destroyed = 0;
  std::int64_t viruses_missed = 0;
  std::int64_t cells_avoided = 0;
  std::int64_t cells_collided = 0;
  std::int64_t wrong_hand_jabs = 0;
  std::int64_t activations = 0;

  // Empowerment covers [activation, empowered_until).
  bool empowered_at(double t) const {
    return empowered_until && t < *empowered_until - kEmpowermentTolerance;
  }

  bool operator==(const ProgressionState&) const = default;
};

// One energy unit per destroyed virus, only outside empowerment, capped at 10.
ProgressionState on_virus_destroyed(ProgressionState s, double sim_time);
ProgressionState on_virus_missed(ProgressionState s);
ProgressionState on_cell_avoided(ProgressionState s);
ProgressionState on_cell_collided(ProgressionState s);
ProgressionState on_wrong_hand(ProgressionState s);

enum class RefusedReason : std::uint8_t { NotFull, NoPress, AlreadyEmpowered };

std::string_view to_string(RefusedReason r);

struct ActivationResult {
  ProgressionState state;
  std::optional<RefusedReason> refused;

  bool activated() const { return !refused; }
};

// Consumes the full bar and grants 10 s of empowerment. Refusal leaves the
// state untouched.
ActivationResult activate_empowerment(const ProgressionState& s, double sim_time,
                                      bool button_pressed);

// Clears an empowerment whose window has closed.
ProgressionState tick_empowerment(ProgressionState s, double sim_time);

}  // namespace virusboxing
