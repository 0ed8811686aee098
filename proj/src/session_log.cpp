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

#include "virusboxing/session_log.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cstdlib>
#include <json.hpp>

#include "virusboxing/entity.hpp"

namespace virusboxing {
namespace {

constexpr std::string_view kTickPrefix = "{\"tick\":";

std::int64_t leading_tick(std::string_view line) {
  if (line.substr(0, kTickPrefix.size()) != kTickPrefix) return -1;
  const char* first = line.data() + kTickPrefix.size();
  const char* last = line.data() + line.size();
  std::int64_t tick = -1;
  auto [ptr, ec] = std::from_chars(first, last, tick);
  if (ec != std::errc() || ptr == last || *ptr != ',') return -1;
  return tick;
}

}  // namespace

std::string SessionLog::serialize() const {
  std::string out = header;
  out += '\n';
  for (const LogRecord& r : records) {
    out += r.line;
    out += '\n';
  }
  return out;
}

SessionLog SessionLog::parse(std::string_view text) {
  SessionLog log;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    const bool terminated = end != std::string_view::npos;
    if (!terminated) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!have_header) {
      log.header = std::string(line);
      have_header = true;
      continue;
    }
    log.records.push_back({leading_tick(line), std::string(line)});
  }
  if (!have_header || log.header.empty()) throw LogFormatError("log: missing header line");
  return log;
}

std::string log_real(double v) { return fmt::format("{:.6f}", v); }

double log_quantize(double v) { return std::strtod(log_real(v).c_str(), nullptr); }

LogHeader parse_log_header(std::string_view header) {
  try {
    const auto j = nlohmann::json::parse(header);
    LogHeader h;
    h.version = j.at("version").get<std::string>();
    h.seed = j.at("seed").get<std::uint64_t>();
    h.config_hash = j.at("config_hash").get<std::string>();
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw LogFormatError(fmt::format("log: unreadable header: {}", e.what()));
  }
}

SummaryMetrics metrics_from_log(const SessionLog& log) {
  SummaryMetrics m;
  m.seed = parse_log_header(log.header).seed;
  double hr_sum = 0.0;
  std::int64_t hr_n = 0;
  for (const LogRecord& r : log.records) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(r.line);
    } catch (const nlohmann::json::parse_error& e) {
      throw LogFormatError(fmt::format("log: unreadable record: {}", e.what()));
    }
    const auto event = j.at("event").get<std::string>();
    if (event == "spawn") {
      const auto kind = entity_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) throw LogFormatError("log: unknown entity kind");
      (is_virus(*kind) ? m.viruses_spawned : m.cells_spawned) += 1;
    } else if (event == "jab") {
      const auto result = j.at("result").get<std::string>();
      if (result == "destroyed") ++m.viruses_destroyed;
      if (result == "wrong_hand") ++m.wrong_hand_jabs;
    } else if (event == "resolve") {
      const auto status = j.at("status").get<std::string>();
      if (status == "missed") ++m.viruses_missed;
      if (status == "avoided") ++m.cells_avoided;
      if (status == "collided") ++m.cells_collided;
    } else if (event == "activate") {
      ++m.activations;
    } else if (event == "hr") {
      const double hr = j.at("hr").get<double>();
      hr_sum += hr;
      m.hr_max = hr_n == 0 ? hr : std::max(m.hr_max, hr);
      ++hr_n;
      m.kcal = j.at("kcal").get<double>();
    } else if (event == "end") {
      m.duration = j.at("t").get<double>();
    }
  }
  m.hr_avg = hr_n > 0 ? hr_sum / static_cast<double>(hr_n) : 0.0;
  m.finalize_percentages();
  return m;
}

}  // namespace virusboxing
