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

#include "parapt/study.hpp"

#include <chrono>
#include <stdexcept>

namespace parapt {

const char* table_name(TableKind kind) {
  switch (kind) {
    case TableKind::kControl: return "control";
    case TableKind::kState: return "state";
    case TableKind::kStateProjected: return "state_projected";
    case TableKind::kAdjoint: return "adjoint";
  }
  return "";
}

namespace {

const FieldNorms& pick(const LevelResult& r, TableKind kind) {
  switch (kind) {
    case TableKind::kControl: return r.control;
    case TableKind::kState: return r.state;
    case TableKind::kStateProjected: return r.state_projected;
    case TableKind::kAdjoint: return r.adjoint;
  }
  return r.control;
}

}  // namespace

std::vector<ConvergenceRow> StudyReport::table(TableKind kind) const {
  std::vector<LevelErrors> rows;
  for (const auto& r : levels)
    if (!r.failure) rows.push_back({r.level, r.intervals, r.k, pick(r, kind)});
  return eoc_table(rows);
}

bool StudyReport::all_converged() const {
  for (const auto& r : levels)
    if (r.failure) return false;
  return true;
}

StudyReport run_study(const ProblemSpec& problem, const StudyOptions& opts) {
  if (!problem.exact) throw std::invalid_argument("run_study: problem has no closed-form solution");
  if (opts.levels.empty()) throw std::invalid_argument("run_study: empty level schedule");
  for (std::size_t m : opts.levels)
    if (m < 2) throw std::invalid_argument("run_study: every level needs at least 2 intervals");

  const SpatialDiscretization space(opts.n_per_side);
  const DiscreteProblem discrete(problem, space);
  const TimeFunction y_exact = problem.exact->state.interpolant(space.mesh);
  const TimeFunction p_exact = problem.exact->adjoint.interpolant(space.mesh);

  StudyReport report;
  report.problem = problem.name;
  report.n_per_side = opts.n_per_side;
  report.threshold = opts.solver.threshold;

  for (std::size_t l = 0; l < opts.levels.size(); ++l) {
    const auto start = std::chrono::steady_clock::now();
    const TimeGrid grid = TimeGrid::uniform(problem.horizon, opts.levels[l]);
    LevelResult r;
    r.level = l + 1;
    r.intervals = grid.intervals();
    r.k = grid.k_max();
    try {
      const StepOperators ops(space, grid);
      const SolveReport sol = fixed_point_solve(discrete, ops, opts.solver);
      r.iterations = sol.iterations;
      r.converged = sol.converged;
      r.final_criterion = sol.final_criterion;
      r.objective = sol.objective;
      if (!sol.converged) {
        r.failure = "fixed point did not converge within " + std::to_string(opts.solver.max_iters) +
                    " iterations";
      } else {
        r.control = to_field_norms(control_norms(sol.control, problem.exact->control, problem.horizon));
        r.state = field_error_norms(y_exact, sol.state, space);
        r.state_projected = field_error_norms(y_exact, dual_linear_projection(sol.state), space);
        r.adjoint = field_error_norms(p_exact, sol.adjoint, space);
      }
    } catch (const CgFailure& e) {
      r.failure = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.levels.push_back(std::move(r));
  }
  return report;
}

}  // namespace parapt
