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

#include <optional>
#include <vector>

#include "parapt/control.hpp"
#include "parapt/problems.hpp"
#include "parapt/solvers.hpp"

namespace parapt {

/// Problem data interpolated onto a fixed spatial mesh.
struct DiscreteProblem {
  DiscreteProblem(const ProblemSpec& spec, const SpatialDiscretization& space);

  const ProblemSpec* spec;
  const SpatialDiscretization* space;
  std::vector<SpatialField> g;
  std::vector<RhsTerm> g0;
  SpatialField y0;
  std::vector<RhsTerm> y_d;
};

struct FixedPointOptions {
  double threshold = 1e-5;
  std::size_t max_iters = 100;
  CgOptions cg;
};

/// Result of the fixed-point iteration. `control` is P(-(1/alpha) B' adjoint)
/// for the returned adjoint; `state` and `adjoint` belong to the control of
/// the previous sweep, which differs from `control` by less than
/// threshold / alpha in the sup norm.
struct SolveReport {
  ClampedLinearControl control;
  PiecewiseConstantField state;
  PiecewiseLinearField adjoint;
  std::size_t iterations = 0;
  double final_criterion = 0.0;
  double objective = 0.0;
  bool converged = false;
  std::vector<double> criterion_history;
  std::vector<double> objective_history;
};

/// State -> adjoint -> projection sweeps until the largest nodal change of
/// B' p between two sweeps drops below the threshold. Starts from the lower
/// bounds unless `u_init` is given. On hitting max_iters the report has
/// converged = false and carries the last criterion value.
SolveReport fixed_point_solve(const DiscreteProblem& problem, const StepOperators& ops,
                              const FixedPointOptions& opts = {},
                              std::optional<ClampedLinearControl> u_init = std::nullopt);

/// Adjoint source y - y_d for the given state.
AdjointSource tracking_source(const DiscreteProblem& problem, const PiecewiseConstantField& y);

/// State for the given control (g0 + B u, y0).
PiecewiseConstantField state_for_control(const DiscreteProblem& problem, const StepOperators& ops,
                                         const ClampedLinearControl& u, const CgOptions& cg = {});

/// 1/2 ||y - y_d||^2_{L2(L2)} + alpha/2 ||u||^2_{L2(I,R^D)}.
double discrete_objective(const DiscreteProblem& problem, const PiecewiseConstantField& y,
                          const ClampedLinearControl& u);

/// (alpha u + B'p, u - v)_{L2(I,R^D)} evaluated by quadrature on the merged
/// breakpoints; <= 0 for every admissible v at the discrete optimum.
double variational_inequality_residual(const DiscreteProblem& problem, const ClampedLinearControl& u,
                                       const PiecewiseLinearField& p, const ControlReference& v);

}  // namespace parapt
