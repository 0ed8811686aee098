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
#include <span>
#include <string>

#include "virusboxing/progression.hpp"

namespace virusboxing {

struct SpawnCounts {
  std::int64_t viruses = 0;
  std::int64_t cells = 0;
};

struct SummaryMetrics {
  std::uint64_t seed = 0;
  double duration = 0.0;

  std::int64_t viruses_spawned = 0;
  std::int64_t cells_spawned = 0;
  std::int64_t viruses_destroyed = 0;
  std::int64_t viruses_missed = 0;
  std::int64_t cells_avoided = 0;
  std::int64_t cells_collided = 0;
  std::int64_t wrong_hand_jabs = 0;
  std::int64_t activations = 0;

  // Absent when nothing of that category spawned.
  std::optional<double> miss_pct;
  std::optional<double> cell_hit_pct;

  // Over the per-second heart-rate samples recorded in the log.
  double hr_avg = 0.0;
  double hr_max = 0.0;
  double kcal = 0.0;

  void finalize_percentages();

  bool operator==(const SummaryMetrics&) const = default;
};

// Outcome part of the summary; heart-rate fields are left for the session.
SummaryMetrics summary(const ProgressionState& s, const SpawnCounts& spawned);

std::string summary_json(const SummaryMetrics& m);

inline constexpr const char* kSummaryCsvHeader =
    "seed,viruses_spawned,viruses_destroyed,viruses_missed,cells_spawned,cells_avoided,"
    "cells_collided,wrong_hand_jabs,activations,miss_pct,cell_hit_pct,hr_avg,hr_max,kcal";

// One CSV row, no newline. `label` replaces the seed column when given.
std::string summary_csv_row(const SummaryMetrics& m, const std::string* label = nullptr);

// Field-wise mean (counts averaged as reals); percentages average present values.
struct AggregateMetrics {
  std::size_t sessions = 0;
  double viruses_spawned = 0, viruses_destroyed = 0, viruses_missed = 0;
  double cells_spawned = 0, cells_avoided = 0, cells_collided = 0;
  double wrong_hand_jabs = 0, activations = 0;
  std::optional<double> miss_pct, cell_hit_pct;
  double hr_avg = 0, hr_max = 0, kcal = 0;
};

AggregateMetrics aggregate(std::span<const SummaryMetrics> runs);
std::string aggregate_csv_row(const AggregateMetrics& a);
std::string aggregate_json(const AggregateMetrics& a);

}  // namespace virusboxing
