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

#include <cmath>
#include <map>
#include <stdexcept>

#include "parapt/quadrature.hpp"
#include "parapt/solvers.hpp"

namespace parapt {

StepOperators::StepOperators(const SpatialDiscretization& space, const TimeGrid& grid)
    : space_(&space), grid_(grid) {
  std::map<double, std::size_t> seen;
  slot_.reserve(grid.intervals());
  for (double k : grid.steps()) {
    auto [it, inserted] = seen.try_emplace(k, implicit_.size());
    if (inserted) {
      implicit_.push_back(linear_combination(1.0, space.mass, 0.5 * k, space.stiffness));
      explicit_.push_back(linear_combination(1.0, space.mass, -0.5 * k, space.stiffness));
    }
    slot_.push_back(it->second);
  }
}

namespace {

void check_dims(const StepOperators& ops, std::span<const RhsTerm> rhs) {
  const std::size_t n = ops.space().n_dofs();
  for (const auto& term : rhs)
    if (term.spatial.size() != n)
      throw std::invalid_argument("source term spatial field does not match the mesh");
}

void add_scaled(SpatialField& dst, double c, const SpatialField& src) {
  if (c != 0.0) kernels::axpy(c, src, dst);
}

}  // namespace

std::vector<SpatialField> state_loads(const StepOperators& ops, std::span<const RhsTerm> rhs) {
  check_dims(ops, rhs);
  const std::size_t M = ops.grid().intervals();
  const std::size_t n = ops.space().n_dofs();
  std::vector<SpatialField> loads(M + 1, SpatialField(n, 0.0));
  for (const auto& term : rhs) {
    const SpatialField mg = ops.space().mass.matvec(term.spatial);
    const HatMoments mom = hat_moments(term.temporal, ops.grid());
    add_scaled(loads[0], mom.down[0], mg);
    for (std::size_t m = 1; m < M; ++m) add_scaled(loads[m], mom.up[m - 1] + mom.down[m], mg);
    add_scaled(loads[M], mom.up[M - 1], mg);
  }
  return loads;
}

PiecewiseConstantField solve_state(const StepOperators& ops, std::span<const RhsTerm> rhs,
                                   const SpatialField& y0, const CgOptions& cg) {
  const SpatialDiscretization& space = ops.space();
  const std::size_t n = space.n_dofs();
  if (y0.size() != n) throw std::invalid_argument("solve_state: initial value does not match the mesh");
  const std::size_t M = ops.grid().intervals();
  const std::vector<SpatialField> loads = state_loads(ops, rhs);

  PiecewiseConstantField y{ops.grid(), {}};
  y.values.reserve(M + 1);

  SpatialField b = space.mass.matvec(y0);
  kernels::axpy(1.0, loads[0], b);
  y.values.push_back(cg_solve(ops.implicit_part(0), b, cg, y0).x);

  for (std::size_t m = 1; m < M; ++m) {
    ops.explicit_part(m - 1).matvec(y.values[m - 1], b);
    kernels::axpy(1.0, loads[m], b);
    y.values.push_back(cg_solve(ops.implicit_part(m), b, cg, y.values[m - 1]).x);
  }

  ops.explicit_part(M - 1).matvec(y.values[M - 1], b);
  kernels::axpy(1.0, loads[M], b);
  y.values.push_back(cg_solve(space.mass, b, cg, y.values[M - 1]).x);
  return y;
}

PiecewiseConstantField solve_state(const SpatialDiscretization& space, const TimeGrid& grid,
                                   std::span<const RhsTerm> rhs, const SpatialField& y0,
                                   const CgOptions& cg) {
  return solve_state(StepOperators(space, grid), rhs, y0, cg);
}

double state_l2_stability_check(const SpatialDiscretization& space, const PiecewiseConstantField& y,
                                std::span<const RhsTerm> rhs, const SpatialField& y0) {
  const TimeGrid& grid = y.grid;
  double y_sq = 0.0;
  for (std::size_t m = 0; m < grid.intervals(); ++m) {
    const double v = l2_norm(space.mass, y.values[m]);
    y_sq += grid.step(m) * v * v;
  }
  const GaussRule& rule = gauss_legendre(kTimeGaussPoints);
  double f_sq = 0.0;
  SpatialField ft(space.n_dofs());
  for (std::size_t m = 0; m < grid.intervals(); ++m) {
    f_sq += rule.integrate(
        [&](double t) {
          std::fill(ft.begin(), ft.end(), 0.0);
          for (const auto& term : rhs) kernels::axpy(term.temporal(t), term.spatial, ft);
          const double v = l2_norm(space.mass, ft);
          return v * v;
        },
        grid.node(m), grid.node(m + 1));
  }
  const double denom = std::sqrt(f_sq) + l2_norm(space.mass, y0);
  return denom > 0.0 ? std::sqrt(y_sq) / denom : 0.0;
}

}  // namespace parapt
