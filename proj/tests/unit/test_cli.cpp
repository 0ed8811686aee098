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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace virusboxing::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("virusboxing_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse_seed_range") {
  CHECK(parse_seed_range("7").first == 7);
  CHECK(parse_seed_range("7").last == 7);
  const auto r = parse_seed_range("1..50");
  CHECK(r.first == 1);
  CHECK(r.last == 50);
  CHECK_THROWS(parse_seed_range("5..1"));
  CHECK_THROWS(parse_seed_range("a..b"));
  CHECK_THROWS(parse_seed_range("-3"));
  CHECK_THROWS(parse_seed_range(""));
}

TEST_CASE("run: one session writes summary, trace, log and config") {
  const auto dir = scratch("single");
  const auto r = cli({"run", "--seed", "7", "--targeting", "rt", "--range", "long", "--out",
                      dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "summary.csv"));
  const auto trace = slurp(dir / "seed_7" / "trace.csv");
  CHECK(trace.rfind("time,hr,kcal,phase,energy,empowered\n", 0) == 0);
  CHECK(count_lines(trace) == 21002);
  CHECK(slurp(dir / "seed_7" / "log.jsonl").find("\"event\":\"end\",\"t\":420.000000") !=
        std::string::npos);
  CHECK(count_lines(slurp(dir / "summary.csv")) == 3);
}

TEST_CASE("run: identical invocations give byte-identical outputs") {
  const auto a = scratch("same_a"), b = scratch("same_b");
  REQUIRE(cli({"run", "--seeds", "1..3", "--out", a.string(), "--jobs", "3"}).code == 0);
  REQUIRE(cli({"run", "--seeds", "1..3", "--out", b.string(), "--jobs", "1"}).code == 0);
  for (const char* f : {"summary.json", "summary.csv", "seed_2/log.jsonl", "seed_3/trace.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("run: seed sweep emits a row per seed plus the aggregate") {
  const auto dir = scratch("sweep");
  const auto r = cli({"run", "--seeds", "1..4", "--format", "csv", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "summary.csv");
  CHECK(count_lines(csv) == 6);
  CHECK(csv.find("\nmean,") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "summary.json"));
}

TEST_CASE("run: flags override the config file") {
  const auto dir = scratch("layer");
  fs::create_directories(dir);
  spit(dir / "c.json", R"({"seed": 3, "targeting": "pt", "profile": "expert"})");
  REQUIRE(cli({"run", "--config", (dir / "c.json").string(), "--targeting", "rt", "--out",
               (dir / "o").string()})
              .code == 0);
  const auto cfg = slurp(dir / "o" / "seed_3" / "config.json");
  CHECK(cfg.find("\"targeting\":\"rt\"") != std::string::npos);
  CHECK(cfg.find("\"name\":\"expert\"") != std::string::npos);
}

TEST_CASE("run: error exits") {
  auto missing = cli({"run", "--config", "/nonexistent/config.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("config") != std::string::npos);
  CHECK(cli({"run", "--targeting", "sideways"}).code == 2);
  CHECK(cli({"run", "--seeds", "9..2"}).code == 2);
  CHECK(cli({"run", "--bogus"}).code == 2);
  CHECK(cli({"run", "--profile", "ghost"}).code == 2);
  CHECK(cli({}).code == 2);
  const auto file = scratch("blocker");
  spit(file, "x");
  CHECK(cli({"run", "--seed", "1", "--out", (file / "sub").string()}).code == 3);
}

TEST_CASE("verify: fresh, truncated, wrong config, unreadable") {
  const auto dir = scratch("verify");
  REQUIRE(cli({"run", "--seed", "5", "--out", dir.string()}).code == 0);
  const auto log = dir / "seed_5" / "log.jsonl";
  const auto cfg = dir / "seed_5" / "config.json";
  CHECK(cli({"verify", "--log", log.string(), "--config", cfg.string()}).code == 0);

  const auto text = slurp(log);
  spit(dir / "short.jsonl", text.substr(0, text.size() / 2));
  const auto cut = cli({"verify", "--log", (dir / "short.jsonl").string(), "--config", cfg.string()});
  CHECK(cut.code == 1);
  CHECK(cut.out.find("tick") != std::string::npos);

  spit(dir / "other.json", R"({"seed": 5, "targeting": "pt"})");
  CHECK(cli({"verify", "--log", log.string(), "--config", (dir / "other.json").string()}).code == 2);
  CHECK(cli({"verify", "--log", log.string(), "--config", cfg.string(), "--seed", "6"}).code == 2);
  CHECK(cli({"verify", "--log", (dir / "absent.jsonl").string(), "--config", cfg.string()}).code == 2);
  spit(dir / "empty.jsonl", "");
  CHECK(cli({"verify", "--log", (dir / "empty.jsonl").string(), "--config", cfg.string()}).code == 2);
}

TEST_CASE("compare: paired table") {
  const auto r = cli({"compare", "--seeds", "1..3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("seed,pt_miss_pct,rt_miss_pct,difference\n", 0) == 0);
  CHECK(r.out.find("\nmean,") != std::string::npos);
  CHECK(r.out.find("pt above rt in 3 of 3 pairs") != std::string::npos);
}

TEST_CASE("profiles: prints the builtins") {
  const auto r = cli({"profiles"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(fs::path(VIRUSBOXING_SOURCE_DIR) / "profiles" / "default_profiles.json"));
}
