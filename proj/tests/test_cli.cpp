// Copyright 2026 the parapt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(PARAPT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("parapt_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli writes tables and summary") {
  const auto dir = scratch("run");
  REQUIRE(run("--example manufactured --levels 4,8 --nh 9 --quiet --out " + dir.string()) == 0);
  for (const char* f : {"control.csv", "state.csv", "state_projected.csv", "adjoint.csv", "tables.md", "summary.jsonl"})
    CHECK(fs::exists(dir / f));
  CHECK(slurp(dir / "state.csv").rfind("level,M,k,err_L1,err_L2,err_Linf,eoc_L1,eoc_L2,eoc_Linf\n", 0) == 0);
  std::istringstream in(slurp(dir / "summary.jsonl"));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line); ++n) CHECK(nlohmann::json::parse(line)["M"].is_number());
  CHECK(n == 8);
}

TEST_CASE("cli formats and config file") {
  const auto dir = scratch("md");
  REQUIRE(run("--example 2 --levels 4,8 --nh 9 --quiet --format md --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "tables.md"));
  CHECK_FALSE(fs::exists(dir / "control.csv"));

  const auto cfg_dir = scratch("cfg");
  fs::create_directories(cfg_dir);
  {
    std::ofstream cfg(cfg_dir / "run.ini");
    cfg << "example=manufactured\nlevels=4,8\nnh=9\nformat=csv\nout=" << (cfg_dir / "out").string() << "\n";
  }
  REQUIRE(run("--quiet --config " + (cfg_dir / "run.ini").string()) == 0);
  CHECK(fs::exists(cfg_dir / "out" / "control.csv"));
  CHECK_FALSE(fs::exists(cfg_dir / "out" / "tables.md"));
}

TEST_CASE("cli exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("--example 7") == 1);
  CHECK(run("--levels 1,2") == 1);
  CHECK(run("--nh 2") == 1);
  CHECK(run("--format xml") == 1);
  CHECK(run("--no-such-flag") == 1);
  // iteration limit reached on example 1 -> solver failure
  const auto dir = scratch("fail");
  CHECK(run("--example 1 --levels 4 --nh 9 --max-iters 1 --quiet --out " + dir.string()) == 2);
  CHECK(fs::exists(dir / "summary.jsonl"));
  CHECK(run("--selftest") == 0);
}
