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

#include <stdexcept>

#include "parapt/solvers.hpp"

namespace parapt {

std::vector<SpatialField> adjoint_loads(const StepOperators& ops, const AdjointSource& source) {
  const SpatialDiscretization& space = ops.space();
  const TimeGrid& grid = ops.grid();
  const std::size_t M = grid.intervals();
  const std::size_t n = space.n_dofs();
  std::vector<SpatialField> loads(M, SpatialField(n, 0.0));

  if (source.field != nullptr) {
    const PiecewiseConstantField& w = *source.field;
    if (w.intervals() != M) throw std::invalid_argument("solve_adjoint: source field lives on another grid");
    for (std::size_t m = 0; m < M; ++m) {
      if (w.values[m].size() != n) throw std::invalid_argument("solve_adjoint: source field does not match the mesh");
      const SpatialField mw = space.mass.matvec(w.values[m]);
      kernels::axpy(source.field_scale * grid.step(m), mw, loads[m]);
    }
  }
  for (const auto& term : source.terms) {
    if (term.spatial.size() != n) throw std::invalid_argument("solve_adjoint: source term does not match the mesh");
    const SpatialField mg = space.mass.matvec(term.spatial);
    const HatMoments mom = hat_moments(term.temporal, grid);
    for (std::size_t m = 0; m < M; ++m) {
      const double c = mom.down[m] + mom.up[m];
      if (c != 0.0) kernels::axpy(c, mg, loads[m]);
    }
  }
  return loads;
}

PiecewiseLinearField solve_adjoint(const StepOperators& ops, const AdjointSource& source,
                                   const CgOptions& cg) {
  const std::size_t M = ops.grid().intervals();
  const std::size_t n = ops.space().n_dofs();
  const std::vector<SpatialField> loads = adjoint_loads(ops, source);

  PiecewiseLinearField p;
  p.knots = ops.grid().nodes();
  p.values.assign(M + 1, SpatialField(n, 0.0));
  SpatialField b(n);
  for (std::size_t m = M; m-- > 0;) {
    ops.explicit_part(m).matvec(p.values[m + 1], b);
    kernels::axpy(1.0, loads[m], b);
    p.values[m] = cg_solve(ops.implicit_part(m), b, cg, p.values[m + 1]).x;
  }
  return p;
}

PiecewiseLinearField solve_adjoint(const SpatialDiscretization& space, const TimeGrid& grid,
                                   const AdjointSource& source, const CgOptions& cg) {
  return solve_adjoint(StepOperators(space, grid), source, cg);
}

}  // namespace parapt
