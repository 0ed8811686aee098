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
#include <optional>
#include <string_view>

namespace virusboxing {

enum class Hand : std::uint8_t { Left, Right };

enum class EntityKind : std::uint8_t {
  RedVirus,
  BlueVirus,
  FlatCell,
  RightTiltCell,
  LeftTiltCell,
};

inline constexpr std::array<EntityKind, 5> kAllEntityKinds = {
    EntityKind::RedVirus, EntityKind::BlueVirus, EntityKind::FlatCell,
    EntityKind::RightTiltCell, EntityKind::LeftTiltCell};

constexpr bool is_virus(EntityKind k) {
  return k == EntityKind::RedVirus || k == EntityKind::BlueVirus;
}

// Red viruses fall to the right hand, blue to the left. Cells are never jabbed.
constexpr std::optional<Hand> required_hand(EntityKind k) {
  switch (k) {
    case EntityKind::RedVirus: return Hand::Right;
    case EntityKind::BlueVirus: return Hand::Left;
    default: return std::nullopt;
  }
}

constexpr std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::RedVirus: return "red_virus";
    case EntityKind::BlueVirus: return "blue_virus";
    case EntityKind::FlatCell: return "flat_cell";
    case EntityKind::RightTiltCell: return "right_tilt_cell";
    case EntityKind::LeftTiltCell: return "left_tilt_cell";
  }
  return "unknown";
}

constexpr std::string_view to_string(Hand h) { return h == Hand::Left ? "left" : "right"; }

std::optional<EntityKind> entity_kind_from_string(std::string_view s);

}  // namespace virusboxing
