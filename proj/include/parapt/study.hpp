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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parapt/errors_eoc.hpp"
#include "parapt/optimizer.hpp"
#include "parapt/problems.hpp"

namespace parapt {

struct StudyOptions {
  std::vector<std::size_t> levels;  // number of time intervals per level
  std::size_t n_per_side = 65;
  FixedPointOptions solver;
};

struct LevelResult {
  std::size_t level = 0;  // 1-based position in the schedule
  std::size_t intervals = 0;
  double k = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_criterion = 0.0;
  double objective = 0.0;
  double wall_seconds = 0.0;
  std::optional<std::string> failure;

  FieldNorms control;
  FieldNorms state;
  FieldNorms state_projected;
  FieldNorms adjoint;
};

enum class TableKind { kControl, kState, kStateProjected, kAdjoint };

inline constexpr TableKind kAllTables[] = {TableKind::kControl, TableKind::kState,
                                           TableKind::kStateProjected, TableKind::kAdjoint};

const char* table_name(TableKind kind);

struct StudyReport {
  std::string problem;
  std::size_t n_per_side = 0;
  double threshold = 0.0;
  std::vector<LevelResult> levels;

  /// EOC table over the levels that converged, in schedule order.
  std::vector<ConvergenceRow> table(TableKind kind) const;
  bool all_converged() const;
};

/// Solves the problem on every level of the schedule with one fixed spatial
/// mesh and measures errors against the closed-form solution. A level whose
/// solve fails (CG breakdown or no fixed-point convergence) is recorded and
/// the remaining levels still run. Requires problem.exact and levels >= 2.
StudyReport run_study(const ProblemSpec& problem, const StudyOptions& opts);

}  // namespace parapt
