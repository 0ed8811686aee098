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

// Replay log: JSON lines terminated by LF. The first line is the header,
// every other line is one event whose first key is "tick". Keys appear in a
// fixed order and every real number is written with exactly six decimals, so
// equal sessions serialize to equal bytes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "virusboxing/metrics.hpp"

namespace virusboxing {

struct LogRecord {
  std::int64_t tick = -1;  // -1 when the stored line could not be read
  std::string line;

  bool operator==(const LogRecord&) const = default;
};

struct SessionLog {
  std::string header;
  std::vector<LogRecord> records;

  std::string serialize() const;

  // Splits on LF. Throws LogFormatError when there is no header line.
  static SessionLog parse(std::string_view text);

  bool operator==(const SessionLog&) const = default;
};

class LogFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real numbers as they appear in the log.
std::string log_real(double v);

// The double a reader gets back from log_real(v).
double log_quantize(double v);

struct LogHeader {
  std::string version;
  std::uint64_t seed = 0;
  std::string config_hash;
};

LogHeader parse_log_header(std::string_view header);

// Rebuilds the summary from the event stream alone.
SummaryMetrics metrics_from_log(const SessionLog& log);

}  // namespace virusboxing
