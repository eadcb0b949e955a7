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
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "parapt/mesh.hpp"
#include "parapt/temporal.hpp"
#include "parapt/time_grid.hpp"

namespace parapt {

/// Box constraints a_i <= u_i(t) <= b_i on the D control amplitudes.
class AdmissibleSet {
 public:
  AdmissibleSet() = default;
  AdmissibleSet(Vector lower, Vector upper);

  std::size_t dim() const { return lower_.size(); }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// max(a_i, min(z, b_i))
  double project(std::size_t i, double z) const;

 private:
  Vector lower_;
  Vector upper_;
};

enum class PieceTag { kLowerActive, kUpperActive, kInactive };

/// Variational-discrete control: for each component a continuous piecewise
/// linear function whose knots refine the primal time grid with the points
/// where the clamped argument crosses a bound. Pieces are tagged by which
/// constraint, if any, is active on them.
struct ClampedLinearControl {
  std::vector<PiecewiseLinearFunction> components;
  std::vector<std::vector<PieceTag>> tags;

  std::size_t dim() const { return components.size(); }
  double value(std::size_t i, double t) const { return components[i](t); }

  /// u_i(t) = c_i on the given grid, clamped to the admissible set.
  static ClampedLinearControl constant(const Vector& c, const TimeGrid& grid,
                                       const AdmissibleSet& bounds);
};

/// (B' p)_i(t) = g_i^T M p(t), sampled exactly at the knots of p (linear in
/// between).
std::vector<PiecewiseLinearFunction> apply_B_adjoint(const PiecewiseLinearField& p,
                                                     std::span<const SpatialField> g,
                                                     const SparseMatrix& mass);

/// Exact pointwise projection of piecewise linear functions onto the box.
/// Crossing points with a bound are inserted as new knots, except when they
/// fall within 1e-13 * T of an existing knot.
ClampedLinearControl clamp_control(std::span<const PiecewiseLinearFunction> v,
                                   const AdmissibleSet& bounds);

/// One separable source term u_i(t) g_i per component (exact temporal form).
std::vector<RhsTerm> control_to_rhs_terms(const ClampedLinearControl& u,
                                          std::span<const SpatialField> g);

/// Something evaluable per component on [0, T], with the points where it is
/// not smooth (used to split quadrature).
struct ControlReference {
  std::size_t dim = 0;
  std::function<double(std::size_t, double)> eval;
  std::vector<double> breakpoints;
};

ControlReference as_reference(const ClampedLinearControl& u);

struct ControlNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Norms of u - v over [0, T] with the Euclidean norm in R^D. L1 and L2 by
/// 10-point Gauss on every piece of the merged breakpoint partition; Linf by
/// sampling 100 evenly spaced points (plus endpoints) per piece.
ControlNorms control_norms(const ClampedLinearControl& u, const ControlReference& v, double horizon);

/// sum_i int_0^T u_i(t)^2 dt, exact.
double control_l2_squared(const ClampedLinearControl& u);

/// sum over pieces of |v(s_{j+1}) - v(s_j)|.
double total_variation(const PiecewiseLinearFunction& v);

}  // namespace parapt
