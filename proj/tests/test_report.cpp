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

#include <sstream>
#include <string>

#include <json.hpp>

#include "parapt/report.hpp"

using namespace parapt;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

StudyReport tiny_study() {
  StudyOptions opts;
  opts.levels = {4, 8, 16};
  opts.n_per_side = 9;
  return run_study(manufactured_smooth(), opts);
}

}  // namespace

TEST_CASE("csv layout") {
  std::vector<LevelErrors> rows{{1, 10, 0.1, {1.0, 2.0, 4.0}}, {2, 20, 0.05, {0.25, 0.5, 1.0}}};
  const auto lines = lines_of(csv_table(eoc_table(rows)));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "level,M,k,err_L1,err_L2,err_Linf,eoc_L1,eoc_L2,eoc_Linf");
  CHECK(lines[1] == "1,10,0.1,1,2,4,,,");
  CHECK(lines[2] == "2,20,0.05,0.25,0.5,1,2,2,2");
  CHECK(format_real(1.0 / 3.0) == "0.33333333");
}

TEST_CASE("study output is complete and deterministic") {
  const auto a = tiny_study();
  const auto b = tiny_study();
  REQUIRE(a.levels.size() == 3);
  CHECK(a.all_converged());
  for (TableKind kind : kAllTables) CHECK(csv_table(a.table(kind)) == csv_table(b.table(kind)));

  const auto md = markdown_tables(a);
  CHECK(md.find("## Control") != std::string::npos);
  CHECK(md.find("## Projected state") != std::string::npos);
  CHECK(md.find("| 1 | 4 |") != std::string::npos);
  CHECK(md.find("Failed levels") == std::string::npos);

  const auto lines = lines_of(summary_lines(a));
  REQUIRE(lines.size() == 12);
  std::size_t seen = 0;
  for (const auto& line : lines) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"problem", "table", "level", "M", "k", "n_per_side", "iterations", "converged",
                            "final_criterion", "objective", "wall_seconds", "err_L1", "err_L2", "err_Linf",
                            "eoc_L1", "eoc_L2", "eoc_Linf"})
      CHECK(j.contains(key));
    CHECK(j["problem"] == "manufactured");
    if (j["level"] == 1) {
      CHECK(j["eoc_L2"].is_null());
      ++seen;
    } else if (j["table"] != "control") {
      CHECK(j["eoc_L2"].is_number());
    } else {
      // no control: zero error, so no rate
      CHECK(j["err_L2"] == 0.0);
      CHECK(j["eoc_L2"].is_null());
    }
  }
  CHECK(seen == 4);
}

TEST_CASE("failed levels are reported and skipped in tables") {
  StudyOptions opts;
  opts.levels = {4, 8};
  opts.n_per_side = 9;
  opts.solver.max_iters = 1;
  const auto r = run_study(example1(), opts);
  CHECK_FALSE(r.all_converged());
  CHECK(r.table(TableKind::kControl).empty());
  CHECK(markdown_tables(r).find("Failed levels") != std::string::npos);
  for (const auto& line : lines_of(summary_lines(r))) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["err_L2"].is_null());
    CHECK(j["failure"].is_string());
  }
}

TEST_CASE("study argument checks") {
  StudyOptions opts;
  opts.levels = {1};
  CHECK_THROWS(run_study(manufactured_smooth(), opts));
  ProblemSpec no_exact = manufactured_smooth();
  no_exact.exact.reset();
  opts.levels = {4};
  CHECK_THROWS(run_study(no_exact, opts));
}
