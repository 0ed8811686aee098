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

// Subcommands:
//   run      one session or a seed sweep; writes summaries, traces and logs
//   verify   re-simulates a log and compares it record by record
//   compare  paired PT/RT sweep over the same seeds
//   profiles prints the built-in player profiles as JSON
//
// Settings are layered: built-in defaults, then --config, then flags.

#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "virusboxing/config.hpp"
#include "virusboxing/session.hpp"

namespace virusboxing::cli {
namespace fs = std::filesystem;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SessionFlags {
  std::string config_path;
  std::string profiles_path;
  std::optional<std::string> seeds;
  std::optional<std::string> targeting;
  std::optional<std::string> range;
  std::optional<std::string> profile;
  std::optional<std::string> pid;
  std::optional<double> setpoint;
};

void add_session_flags(CLI::App& app, SessionFlags& f, bool with_seeds) {
  app.add_option("--config", f.config_path, "session config file (JSON)");
  app.add_option("--profiles", f.profiles_path, "extra player profiles file (JSON)");
  if (with_seeds) {
    app.add_option("--seed,--seeds", f.seeds, "seed N or seed range A..B");
  }
  app.add_option("--range", f.range, "empowered punching range")
      ->check(CLI::IsMember({"short", "medium", "long"}));
  app.add_option("--profile", f.profile, "player profile name");
  app.add_option("--pid", f.pid, "heart-rate control")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--setpoint", f.setpoint, "heart-rate setpoint, bpm");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read '{}'", p.string()));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError(fmt::format("cannot write '{}'", p.string()));
}

void make_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) {
    throw IoError(fmt::format("cannot create directory '{}'", p.string()));
  }
}

std::vector<PlayerProfile> extra_profiles(const SessionFlags& f) {
  if (f.profiles_path.empty()) return {};
  std::istringstream in(read_file(f.profiles_path));
  try {
    return load_profiles(in);
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("profiles file '{}': {}", f.profiles_path, e.what()));
  }
}

// Defaults, then the config file, then flags.
SessionConfig base_config(const SessionFlags& f) {
  const auto extra = extra_profiles(f);
  SessionConfig c = f.config_path.empty() ? SessionConfig{} : load_config(f.config_path, extra);
  if (f.targeting) {
    auto m = targeting_mode_from_string(*f.targeting);
    if (!m) throw ConfigError(fmt::format("unknown targeting '{}'", *f.targeting));
    c.targeting.mode = *m;
  }
  if (f.range) c.targeting.range = *punch_range_from_string(*f.range);
  if (f.profile) {
    auto found = std::find_if(extra.begin(), extra.end(),
                              [&](const PlayerProfile& p) { return p.name == *f.profile; });
    if (found != extra.end()) {
      c.profile = *found;
    } else if (auto b = builtin_profile(*f.profile)) {
      c.profile = *b;
    } else {
      throw ConfigError(fmt::format("unknown profile '{}'", *f.profile));
    }
  }
  if (f.pid) c.pid_enabled = *f.pid == "on";
  if (f.setpoint) c.hr_setpoint = *f.setpoint;
  c.validate();
  return c;
}

SeedRange seeds_for(const SessionFlags& f, const SessionConfig& c) {
  if (!f.seeds) return {c.seed, c.seed};
  try {
    return parse_seed_range(*f.seeds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

unsigned default_jobs() {
  if (const char* env = std::getenv("VIRUSBOXING_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs one session per config on up to `jobs` threads. Results come back in
// input order; sessions share nothing.
std::vector<SessionResult> run_batch(const std::vector<SessionConfig>& configs, unsigned jobs) {
  std::vector<SessionResult> results(configs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_session(configs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<SessionConfig> sweep_configs(const SessionConfig& base, SeedRange seeds) {
  std::vector<SessionConfig> out;
  for (std::uint64_t s = seeds.first;; ++s) {
    SessionConfig c = base;
    c.seed = s;
    out.push_back(c);
    if (s == seeds.last) break;
  }
  return out;
}

std::string fixed(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : ""; }

int cmd_run(const SessionFlags& f, const std::string& out_dir, std::vector<std::string> formats,
            unsigned jobs, std::ostream& out) {
  const SessionConfig base = base_config(f);
  const SeedRange seeds = seeds_for(f, base);
  const auto configs = sweep_configs(base, seeds);
  if (formats.empty()) formats = {"json", "csv"};

  const fs::path root(out_dir);
  make_dir(root);
  const auto results = run_batch(configs, jobs);

  std::vector<SummaryMetrics> metrics;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const fs::path dir = root / fmt::format("seed_{}", configs[i].seed);
    make_dir(dir);
    write_file(dir / "log.jsonl", results[i].log.serialize());
    write_file(dir / "trace.csv", trace_csv(results[i].trace));
    write_file(dir / "config.json", canonical_config_json(configs[i]) + "\n");
    metrics.push_back(results[i].metrics);
  }
  const AggregateMetrics agg = aggregate(metrics);
  const bool want_json = std::find(formats.begin(), formats.end(), "json") != formats.end();
  const bool want_csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
  if (want_json) {
    std::string doc = "{\"runs\":[";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      if (i > 0) doc += ',';
      doc += summary_json(metrics[i]);
    }
    doc += "],\"aggregate\":" + aggregate_json(agg) + "}\n";
    write_file(root / "summary.json", doc);
  }
  if (want_csv) {
    std::string doc = std::string(kSummaryCsvHeader) + "\n";
    for (const SummaryMetrics& m : metrics) doc += summary_csv_row(m) + "\n";
    doc += aggregate_csv_row(agg) + "\n";
    write_file(root / "summary.csv", doc);
  }

  out << kSummaryCsvHeader << '\n';
  for (const SummaryMetrics& m : metrics) out << summary_csv_row(m) << '\n';
  if (metrics.size() > 1) out << aggregate_csv_row(agg) << '\n';
  return kExitOk;
}

int cmd_compare(SessionFlags f, const std::string& out_dir, unsigned jobs, std::ostream& out) {
  f.targeting = "pt";
  const SessionConfig pt = base_config(f);
  f.targeting = "rt";
  const SessionConfig rt = base_config(f);
  const SeedRange seeds = seeds_for(f, pt);
  auto configs = sweep_configs(pt, seeds);
  const auto rt_configs = sweep_configs(rt, seeds);
  const std::size_t n = configs.size();
  configs.insert(configs.end(), rt_configs.begin(), rt_configs.end());
  const auto results = run_batch(configs, jobs);

  std::string table = "seed,pt_miss_pct,rt_miss_pct,difference\n";
  double pt_sum = 0, rt_sum = 0;
  std::size_t pt_higher = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = results[i].metrics;
    const auto& r = results[n + i].metrics;
    const double pv = p.miss_pct.value_or(0.0);
    const double rv = r.miss_pct.value_or(0.0);
    pt_sum += pv;
    rt_sum += rv;
    if (pv > rv) ++pt_higher;
    table += fmt::format("{},{},{},{:.6f}\n", p.seed, fixed(p.miss_pct), fixed(r.miss_pct), pv - rv);
  }
  const double dn = static_cast<double>(n);
  table += fmt::format("mean,{:.6f},{:.6f},{:.6f}\n", pt_sum / dn, rt_sum / dn, (pt_sum - rt_sum) / dn);
  out << table;
  out << fmt::format("pt above rt in {} of {} pairs\n", pt_higher, n);
  if (!out_dir.empty()) {
    make_dir(out_dir);
    write_file(fs::path(out_dir) / "compare.csv", table);
  }
  return kExitOk;
}

int cmd_verify(const SessionFlags& f, const std::string& log_path, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(log_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SessionLog log;
  try {
    log = SessionLog::parse(text);
  } catch (const LogFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SessionConfig config = base_config(f);
  if (seed) config.seed = *seed;
  const VerifyResult r = replay_verify(log, config);
  switch (r.status) {
    case VerifyStatus::Pass:
      out << "pass\n";
      return kExitOk;
    case VerifyStatus::HeaderMismatch:
      err << "error: " << r.message << '\n';
      return kExitUsage;
    case VerifyStatus::Divergence:
      out << "fail: " << r.message << '\n';
      return kExitDivergence;
  }
  return kExitDivergence;
}

}  // namespace

SeedRange parse_seed_range(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument(fmt::format("invalid seed '{}'", text));
    }
    try {
      return static_cast<std::uint64_t>(std::stoull(s));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument(fmt::format("seed out of range '{}'", text));
    }
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto s = parse_one(text);
    return {s, s};
  }
  SeedRange r{parse_one(text.substr(0, dots)), parse_one(text.substr(dots + 2))};
  if (r.last < r.first) throw std::invalid_argument(fmt::format("empty seed range '{}'", text));
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"VirusBoxing session simulator"};
  app.require_subcommand(1);

  SessionFlags run_flags;
  std::string run_out = "out";
  std::vector<std::string> formats;
  unsigned run_jobs = default_jobs();
  CLI::App* run = app.add_subcommand("run", "run one session or a seed sweep");
  add_session_flags(*run, run_flags, true);
  run->add_option("--targeting", run_flags.targeting, "pt or rt")
      ->check(CLI::IsMember({"pt", "rt"}));
  run->add_option("--out", run_out, "output directory");
  run->add_option("--format", formats, "summary formats: json, csv")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--jobs", run_jobs, "parallel sessions")->check(CLI::PositiveNumber);

  SessionFlags cmp_flags;
  std::string cmp_out;
  unsigned cmp_jobs = default_jobs();
  CLI::App* compare = app.add_subcommand("compare", "paired PT/RT miss% over a seed range");
  add_session_flags(*compare, cmp_flags, true);
  compare->add_option("--out", cmp_out, "write compare.csv here");
  compare->add_option("--jobs", cmp_jobs, "parallel sessions")->check(CLI::PositiveNumber);

  SessionFlags ver_flags;
  std::string log_path;
  std::optional<std::uint64_t> ver_seed;
  CLI::App* verify = app.add_subcommand("verify", "re-simulate a replay log");
  add_session_flags(*verify, ver_flags, false);
  verify->add_option("--targeting", ver_flags.targeting, "pt or rt")
      ->check(CLI::IsMember({"pt", "rt"}));
  verify->add_option("--log", log_path, "replay log")->required();
  verify->add_option("--seed", ver_seed, "seed, overriding the config file");

  CLI::App* profiles = app.add_subcommand("profiles", "print the built-in player profiles");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags, run_out, formats, run_jobs, out);
    if (compare->parsed()) return cmd_compare(cmp_flags, cmp_out, cmp_jobs, out);
    if (verify->parsed()) return cmd_verify(ver_flags, log_path, ver_seed, out, err);
    if (profiles->parsed()) {
      out << profiles_json(builtin_profiles());
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace virusboxing::cli
