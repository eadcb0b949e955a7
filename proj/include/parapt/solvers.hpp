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

#include <span>
#include <vector>

#include "parapt/mesh.hpp"
#include "parapt/sparse.hpp"
#include "parapt/temporal.hpp"
#include "parapt/time_grid.hpp"

namespace parapt {

/// Per-step matrices M + (k/2) K and M - (k/2) K, one pair per distinct
/// step length of the grid. Shared by the forward and backward sweeps.
class StepOperators {
 public:
  StepOperators(const SpatialDiscretization& space, const TimeGrid& grid);

  const SpatialDiscretization& space() const { return *space_; }
  const TimeGrid& grid() const { return grid_; }

  const SparseMatrix& implicit_part(std::size_t interval) const { return implicit_[slot_[interval]]; }
  const SparseMatrix& explicit_part(std::size_t interval) const { return explicit_[slot_[interval]]; }
  std::size_t distinct_steps() const { return implicit_.size(); }

 private:
  const SpatialDiscretization* space_;
  TimeGrid grid_;
  std::vector<std::size_t> slot_;
  std::vector<SparseMatrix> implicit_;
  std::vector<SparseMatrix> explicit_;
};

/// Petrov-Galerkin state: piecewise constant in time, tested with the
/// continuous piecewise linear hats b_0..b_M. Returns alpha_1..alpha_{M+1}:
///
///   (M + k_1/2 K) a_1 = M y0 + F_0                                   (damped start)
///   (M + k_{m+1}/2 K) a_{m+1} = (M - k_m/2 K) a_m + F_m,  m = 1..M-1  (Crank-Nicolson)
///   M a_{M+1} = (M - k_M/2 K) a_M + F_M                               (terminal value)
///
/// with F_m = int f(t) b_m(t) dt paired against the nodal basis.
PiecewiseConstantField solve_state(const StepOperators& ops, std::span<const RhsTerm> rhs,
                                   const SpatialField& y0, const CgOptions& cg = {});

PiecewiseConstantField solve_state(const SpatialDiscretization& space, const TimeGrid& grid,
                                   std::span<const RhsTerm> rhs, const SpatialField& y0,
                                   const CgOptions& cg = {});

/// Adjoint source h(t) = scale * w(t) + sum_j theta_j(t) g_j with w in Y_k.
struct AdjointSource {
  const PiecewiseConstantField* field = nullptr;
  double field_scale = 1.0;
  std::vector<RhsTerm> terms;
};

/// Continuous piecewise linear adjoint with beta_M = 0, marching backwards:
///
///   (M + k_m/2 K) beta_{m-1} = (M - k_m/2 K) beta_m + H_m,  H_m = int_{I_m} h dt.
PiecewiseLinearField solve_adjoint(const StepOperators& ops, const AdjointSource& source,
                                   const CgOptions& cg = {});

PiecewiseLinearField solve_adjoint(const SpatialDiscretization& space, const TimeGrid& grid,
                                   const AdjointSource& source, const CgOptions& cg = {});

/// Discrete loads F_0..F_M of the state scheme (exposed for oracle checks).
std::vector<SpatialField> state_loads(const StepOperators& ops, std::span<const RhsTerm> rhs);

/// Interval integrals H_1..H_M of the adjoint scheme.
std::vector<SpatialField> adjoint_loads(const StepOperators& ops, const AdjointSource& source);

/// ||y_k||_{L2(L2)} / (||f||_{L2(L2)} + ||y0||_{L2}); bounded independently of
/// the time step for a stable scheme.
double state_l2_stability_check(const SpatialDiscretization& space, const PiecewiseConstantField& y,
                                std::span<const RhsTerm> rhs, const SpatialField& y0);

}  // namespace parapt
