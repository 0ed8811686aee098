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

#include "virusboxing/metrics.hpp"

#include <fmt/format.h>

namespace virusboxing {
namespace {

std::string fixed(double v) { return fmt::format("{:.6f}", v); }

std::string opt_json(const std::optional<double>& v) { return v ? fixed(*v) : "null"; }
std::string opt_csv(const std::optional<double>& v) { return v ? fixed(*v) : ""; }

}  // namespace

void SummaryMetrics::finalize_percentages() {
  miss_pct = viruses_spawned > 0
                 ? std::optional<double>(100.0 * static_cast<double>(viruses_missed) /
                                         static_cast<double>(viruses_spawned))
                 : std::nullopt;
  cell_hit_pct = cells_spawned > 0
                     ? std::optional<double>(100.0 * static_cast<double>(cells_collided) /
                                             static_cast<double>(cells_spawned))
                     : std::nullopt;
}

std::string summary_json(const SummaryMetrics& m) {
  return fmt::format(
      "{{\"seed\":{},\"duration\":{},\"viruses_spawned\":{},\"viruses_destroyed\":{},"
      "\"viruses_missed\":{},\"cells_spawned\":{},\"cells_avoided\":{},\"cells_collided\":{},"
      "\"wrong_hand_jabs\":{},\"activations\":{},\"miss_pct\":{},\"cell_hit_pct\":{},"
      "\"hr_avg\":{},\"hr_max\":{},\"kcal\":{}}}",
      m.seed, fixed(m.duration), m.viruses_spawned, m.viruses_destroyed, m.viruses_missed,
      m.cells_spawned, m.cells_avoided, m.cells_collided, m.wrong_hand_jabs, m.activations,
      opt_json(m.miss_pct), opt_json(m.cell_hit_pct), fixed(m.hr_avg), fixed(m.hr_max),
      fixed(m.kcal));
}

std::string summary_csv_row(const SummaryMetrics& m, const std::string* label) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                     label ? *label : std::to_string(m.seed), m.viruses_spawned,
                     m.viruses_destroyed, m.viruses_missed, m.cells_spawned, m.cells_avoided,
                     m.cells_collided, m.wrong_hand_jabs, m.activations, opt_csv(m.miss_pct),
                     opt_csv(m.cell_hit_pct), fixed(m.hr_avg), fixed(m.hr_max), fixed(m.kcal));
}

AggregateMetrics aggregate(std::span<const SummaryMetrics> runs) {
  AggregateMetrics a;
  a.sessions = runs.size();
  if (runs.empty()) return a;
  double miss_sum = 0, hit_sum = 0;
  std::size_t miss_n = 0, hit_n = 0;
  for (const SummaryMetrics& m : runs) {
    a.viruses_spawned += m.viruses_spawned;
    a.viruses_destroyed += m.viruses_destroyed;
    a.viruses_missed += m.viruses_missed;
    a.cells_spawned += m.cells_spawned;
    a.cells_avoided += m.cells_avoided;
    a.cells_collided += m.cells_collided;
    a.wrong_hand_jabs += m.wrong_hand_jabs;
    a.activations += m.activations;
    a.hr_avg += m.hr_avg;
    a.hr_max += m.hr_max;
    a.kcal += m.kcal;
    if (m.miss_pct) {
      miss_sum += *m.miss_pct;
      ++miss_n;
    }
    if (m.cell_hit_pct) {
      hit_sum += *m.cell_hit_pct;
      ++hit_n;
    }
  }
  const double n = static_cast<double>(runs.size());
  for (double* f : {&a.viruses_spawned, &a.viruses_destroyed, &a.viruses_missed, &a.cells_spawned,
                    &a.cells_avoided, &a.cells_collided, &a.wrong_hand_jabs, &a.activations,
                    &a.hr_avg, &a.hr_max, &a.kcal}) {
    *f /= n;
  }
  if (miss_n > 0) a.miss_pct = miss_sum / static_cast<double>(miss_n);
  if (hit_n > 0) a.cell_hit_pct = hit_sum / static_cast<double>(hit_n);
  return a;
}

std::string aggregate_csv_row(const AggregateMetrics& a) {
  return fmt::format("mean,{},{},{},{},{},{},{},{},{},{},{},{},{}", fixed(a.viruses_spawned),
                     fixed(a.viruses_destroyed), fixed(a.viruses_missed), fixed(a.cells_spawned),
                     fixed(a.cells_avoided), fixed(a.cells_collided), fixed(a.wrong_hand_jabs),
                     fixed(a.activations), opt_csv(a.miss_pct), opt_csv(a.cell_hit_pct),
                     fixed(a.hr_avg), fixed(a.hr_max), fixed(a.kcal));
}

std::string aggregate_json(const AggregateMetrics& a) {
  return fmt::format(
      "{{\"sessions\":{},\"viruses_spawned\":{},\"viruses_destroyed\":{},\"viruses_missed\":{},"
      "\"cells_spawned\":{},\"cells_avoided\":{},\"cells_collided\":{},\"wrong_hand_jabs\":{},"
      "\"activations\":{},\"miss_pct\":{},\"cell_hit_pct\":{},\"hr_avg\":{},\"hr_max\":{},"
      "\"kcal\":{}}}",
      a.sessions, fixed(a.viruses_spawned), fixed(a.viruses_destroyed), fixed(a.viruses_missed),
      fixed(a.cells_spawned), fixed(a.cells_avoided), fixed(a.cells_collided),
      fixed(a.wrong_hand_jabs), fixed(a.activations), opt_json(a.miss_pct),
      opt_json(a.cell_hit_pct), fixed(a.hr_avg), fixed(a.hr_max), fixed(a.kcal));
}

}  // namespace virusboxing
