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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "parapt/control.hpp"
#include "parapt/mesh.hpp"
#include "parapt/time_grid.hpp"

namespace parapt {

/// L1(I,L1), L2(I,L2) and Linf(I,Linf) norms of a space-time quantity.
struct FieldNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? l1 : (i == 1 ? l2 : linf); }
};

inline FieldNorms to_field_norms(const ControlNorms& n) { return {n.l1, n.l2, n.linf}; }

/// Norms of a difference given piece by piece: `diff(j, t)` is evaluated for
/// t in [breaks[j], breaks[j+1]]. Time integrals use 5-point Gauss per piece;
/// the sup is taken over the Gauss points and both piece endpoints.
FieldNorms space_time_norms(std::span<const double> breaks,
                            const std::function<SpatialField(std::size_t, double)>& diff,
                            const SpatialDiscretization& space);

/// exact - approx with `exact` the nodal interpolant of the reference.
FieldNorms field_error_norms(const TimeFunction& exact, const PiecewiseConstantField& approx,
                             const SpatialDiscretization& space);
FieldNorms field_error_norms(const TimeFunction& exact, const PiecewiseLinearField& approx,
                             const SpatialDiscretization& space);

/// Interval means of a piecewise constant field on a nested refinement of
/// `coarse` (every coarse node must be a fine node). Terminal value 0.
PiecewiseConstantField restrict_means(const PiecewiseConstantField& fine, const TimeGrid& coarse);

/// Norms of a - b for two fields on the same grid (terminal slot ignored).
FieldNorms difference_norms(const PiecewiseConstantField& a, const PiecewiseConstantField& b,
                            const SpatialDiscretization& space);

/// ||w||_{L2(I,L2)} for w in Y_k, exact.
double l2l2_norm(const PiecewiseConstantField& w, const SparseMatrix& mass);
/// ||p||_{L2(I,L2)} for continuous piecewise linear p, exact.
double l2l2_norm(const PiecewiseLinearField& p, const SparseMatrix& mass);
/// ||d/dt p||_{L2(I,L2)}, exact from nodal differences.
double time_derivative_norm(const PiecewiseLinearField& p, const SparseMatrix& mass);

/// log(e_prev / e_cur) / log(k_prev / k_cur); absent when either error is
/// not positive or the steps coincide.
std::optional<double> eoc(double e_prev, double e_cur, double k_prev, double k_cur);

struct LevelErrors {
  std::size_t level = 0;
  std::size_t intervals = 0;
  double k = 0.0;
  FieldNorms errors;
};

struct ConvergenceRow {
  std::size_t level = 0;
  std::size_t intervals = 0;
  double k = 0.0;
  FieldNorms errors;
  std::array<std::optional<double>, 3> eoc;
};

std::vector<ConvergenceRow> eoc_table(std::span<const LevelErrors> rows);

}  // namespace parapt
