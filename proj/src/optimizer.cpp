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

#include "parapt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parapt/quadrature.hpp"

namespace parapt {

DiscreteProblem::DiscreteProblem(const ProblemSpec& s, const SpatialDiscretization& sp)
    : spec(&s), space(&sp) {
  for (const auto& gi : s.g) g.push_back(interpolate(sp.mesh, gi));
  g0 = s.g0.discretize(sp.mesh);
  y0 = s.y0 ? interpolate(sp.mesh, s.y0) : SpatialField(sp.n_dofs(), 0.0);
  y_d = s.y_d.discretize(sp.mesh);
}

AdjointSource tracking_source(const DiscreteProblem& problem, const PiecewiseConstantField& y) {
  AdjointSource src;
  src.field = &y;
  src.field_scale = 1.0;
  src.terms.reserve(problem.y_d.size());
  for (const auto& term : problem.y_d) {
    SpatialField neg = term.spatial;
    for (double& v : neg) v = -v;
    src.terms.push_back({term.temporal, std::move(neg)});
  }
  return src;
}

PiecewiseConstantField state_for_control(const DiscreteProblem& problem, const StepOperators& ops,
                                         const ClampedLinearControl& u, const CgOptions& cg) {
  std::vector<RhsTerm> rhs = problem.g0;
  for (auto& term : control_to_rhs_terms(u, problem.g)) rhs.push_back(std::move(term));
  return solve_state(ops, rhs, problem.y0, cg);
}

double discrete_objective(const DiscreteProblem& problem, const PiecewiseConstantField& y,
                          const ClampedLinearControl& u) {
  const SparseMatrix& mass = problem.space->mass;
  const TimeGrid& grid = y.grid;
  const GaussRule& rule = gauss_legendre(kTimeGaussPoints);
  SpatialField diff(problem.space->n_dofs());
  double track = 0.0;
  for (std::size_t m = 0; m < grid.intervals(); ++m) {
    track += rule.integrate(
        [&](double t) {
          diff = y.values[m];
          for (const auto& term : problem.y_d) kernels::axpy(-term.temporal(t), term.spatial, diff);
          return l2_inner(mass, diff, diff);
        },
        grid.node(m), grid.node(m + 1));
  }
  return 0.5 * track + 0.5 * problem.spec->alpha * control_l2_squared(u);
}

namespace {

std::vector<PiecewiseLinearFunction> control_argument(const DiscreteProblem& problem,
                                                      const PiecewiseLinearField& p) {
  auto bp = apply_B_adjoint(p, problem.g, problem.space->mass);
  const double scale = -1.0 / problem.spec->alpha;
  for (auto& f : bp)
    for (double& v : f.values) v *= scale;
  return bp;
}

double nodal_change(const std::vector<PiecewiseLinearFunction>& a,
                    const std::vector<PiecewiseLinearFunction>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t m = 0; m < a[i].values.size(); ++m)
      worst = std::max(worst, std::fabs(a[i].values[m] - b[i].values[m]));
  return worst;
}

}  // namespace

SolveReport fixed_point_solve(const DiscreteProblem& problem, const StepOperators& ops,
                              const FixedPointOptions& opts, std::optional<ClampedLinearControl> u_init) {
  if (!(opts.threshold > 0.0)) throw std::invalid_argument("fixed_point_solve: threshold must be positive");
  const ProblemSpec& spec = *problem.spec;
  ClampedLinearControl u =
      u_init ? std::move(*u_init) : ClampedLinearControl::constant(spec.bounds.lower(), ops.grid(), spec.bounds);
  if (u.dim() != spec.dim()) throw std::invalid_argument("fixed_point_solve: initial control has wrong dimension");

  SolveReport report{{}, PiecewiseConstantField{ops.grid(), {}}, {}, 0, 0.0, 0.0, false, {}, {}};
  std::vector<PiecewiseLinearFunction> bp_prev;
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    PiecewiseConstantField y = state_for_control(problem, ops, u, opts.cg);
    report.objective_history.push_back(discrete_objective(problem, y, u));
    PiecewiseLinearField p = solve_adjoint(ops, tracking_source(problem, y), opts.cg);

    // Criterion on B'p itself (not scaled by 1/alpha).
    auto bp = apply_B_adjoint(p, problem.g, problem.space->mass);
    const bool have_prev = !bp_prev.empty() || spec.dim() == 0;
    const double crit = have_prev ? nodal_change(bp, bp_prev) : INFINITY;
    if (have_prev) report.criterion_history.push_back(crit);

    ClampedLinearControl u_next = clamp_control(control_argument(problem, p), spec.bounds);
    report.iterations = it;
    report.final_criterion = crit;
    report.objective = report.objective_history.back();
    report.state = std::move(y);
    report.adjoint = std::move(p);
    report.control = std::move(u_next);
    if (have_prev && crit < opts.threshold) {
      report.converged = true;
      return report;
    }
    u = report.control;
    bp_prev = std::move(bp);
  }
  return report;
}

double variational_inequality_residual(const DiscreteProblem& problem, const ClampedLinearControl& u,
                                       const PiecewiseLinearField& p, const ControlReference& v) {
  const auto bp = apply_B_adjoint(p, problem.g, problem.space->mass);
  const double alpha = problem.spec->alpha;
  const double horizon = p.knots.back();
  std::vector<double> pts{0.0, horizon};
  for (const auto& c : u.components) pts.insert(pts.end(), c.knots.begin(), c.knots.end());
  pts.insert(pts.end(), v.breakpoints.begin(), v.breakpoints.end());
  pts.insert(pts.end(), p.knots.begin(), p.knots.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const GaussRule& rule = gauss_legendre(kControlGaussPoints);
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    s += rule.integrate(
        [&](double t) {
          double acc = 0.0;
          for (std::size_t i = 0; i < u.dim(); ++i) {
            const double ui = u.components[i](t);
            acc += (alpha * ui + bp[i](t)) * (ui - v.eval(i, t));
          }
          return acc;
        },
        pts[j], pts[j + 1]);
  }
  return s;
}

}  // namespace parapt
