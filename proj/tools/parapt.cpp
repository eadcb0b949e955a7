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

// Convergence studies for the built-in control problems.
//
//   parapt --example 1 --levels 10,20,40 --nh 33 --out results/
//   parapt --selftest

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parapt/kernels.hpp"
#include "parapt/report.hpp"
#include "parapt/study.hpp"
#include "parapt/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

std::vector<std::size_t> default_levels(const std::string& example) {
  if (example == "2" || example == "example2") return {8, 16, 32, 64, 128, 256};
  if (example == "manufactured") return {8, 16, 32, 64, 128};
  return {10, 20, 40, 80, 160};
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

int run_selftest() {
  int failed = 0;
  for (const auto& r : parapt::verify::run_selftests()) {
    std::printf("%s  %-45s value=%.3e tol=%.0e\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value,
                r.tolerance);
    failed += r.passed ? 0 : 1;
  }
  std::printf("kernels: %s\n", std::string(parapt::kernels::active().name).c_str());
  return failed == 0 ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence studies for time-discrete parabolic optimal control"};
  app.option_defaults()->always_capture_default();

  std::string example = "1";
  std::vector<std::size_t> levels;
  std::size_t nh = 65;
  double threshold = 1e-5;
  std::optional<double> alpha;
  std::size_t max_iters = 100;
  std::string out_dir = "./out";
  std::string format = "both";
  bool selftest = false;
  bool quiet = false;

  app.set_config("--config", "", "key=value file with the same keys as the flags");
  app.add_option("--example", example, "Problem: 1, 2 or manufactured")
      ->check(CLI::IsMember({"1", "2", "example1", "example2", "manufactured"}));
  app.add_option("--levels", levels, "Comma-separated list of interval counts M (each >= 2)")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  app.add_option("--nh", nh, "Nodes per side of the spatial mesh")->check(CLI::Range(3, 1025));
  app.add_option("--threshold", threshold, "Fixed-point stopping threshold on max |B'(p_new - p_old)|")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", alpha, "Override the cost weight alpha")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", max_iters, "Fixed-point iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Table output: csv, md or both")->check(CLI::IsMember({"csv", "md", "both"}));
  app.add_flag("--selftest", selftest, "Run analytic and oracle self-checks and exit");
  app.add_flag("--quiet", quiet, "Do not print tables to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (selftest) return run_selftest();
  if (levels.empty()) levels = default_levels(example);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    std::cerr << "parapt: cannot create output directory '" << out_dir << "'\n";
    return kExitUsage;
  }

  parapt::ProblemSpec problem = parapt::problem_by_name(example, alpha);
  parapt::StudyOptions opts;
  opts.levels = levels;
  opts.n_per_side = nh;
  opts.solver.threshold = threshold;
  opts.solver.max_iters = max_iters;

  const parapt::StudyReport report = parapt::run_study(problem, opts);
  for (const auto& l : report.levels) {
    if (l.failure)
      std::cerr << "level " << l.level << " M=" << l.intervals << ": FAILED (" << *l.failure << ")\n";
    else
      std::cerr << "level " << l.level << " M=" << l.intervals << ": " << l.iterations << " iterations, "
                << parapt::format_real(l.wall_seconds) << " s\n";
  }

  const fs::path dir(out_dir);
  bool ok = true;
  if (format == "csv" || format == "both") {
    for (parapt::TableKind kind : parapt::kAllTables)
      ok &= write_file(dir / (std::string(parapt::table_name(kind)) + ".csv"),
                       parapt::csv_table(report.table(kind)));
  }
  const std::string md = parapt::markdown_tables(report);
  if (format == "md" || format == "both") ok &= write_file(dir / "tables.md", md);
  ok &= write_file(dir / "summary.jsonl", parapt::summary_lines(report));
  if (!ok) {
    std::cerr << "parapt: failed writing into '" << out_dir << "'\n";
    return kExitUsage;
  }
  if (!quiet) std::cout << md;
  return report.all_converged() ? kExitOk : kExitSolver;
}
