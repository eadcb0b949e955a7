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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parapt/control.hpp"
#include "parapt/mesh.hpp"
#include "parapt/temporal.hpp"
#include "parapt/time_grid.hpp"

namespace parapt {

/// theta(t) * s(x). The derivative callbacks are optional and only used by
/// residual self-checks of problems with closed-form solutions.
struct SeparableTerm {
  TemporalFunction temporal;
  SpatialFunction spatial;
  std::function<double(double)> temporal_derivative = {};
  SpatialFunction laplacian = {};
};

/// Finite sum of separable terms.
struct SeparableField {
  std::vector<SeparableTerm> terms;

  double operator()(double t, double x1, double x2) const;
  bool has_derivatives() const;
  double time_derivative(double t, double x1, double x2) const;
  double laplacian(double t, double x1, double x2) const;

  /// Nodal interpolation of each spatial profile.
  std::vector<RhsTerm> discretize(const StructuredTriMesh& mesh) const;
  /// t -> nodal interpolant of the field at time t.
  TimeFunction interpolant(const StructuredTriMesh& mesh) const;
};

struct ExactSolution {
  ControlReference control;
  SeparableField state;
  SeparableField adjoint;
};

/// min 1/2 ||y - y_d||^2 + alpha/2 ||u||^2 subject to
///   y_t - Laplace y = g0 + sum_i u_i g_i,  y(0) = y0,  a_i <= u_i <= b_i.
struct ProblemSpec {
  std::string name;
  double horizon = 1.0;
  double alpha = 1.0;
  AdmissibleSet bounds;
  std::vector<SpatialFunction> g;
  SeparableField g0;
  SpatialFunction y0;
  SeparableField y_d;
  std::optional<ExactSolution> exact;

  std::size_t dim() const { return g.size(); }
};

/// sin(pi x1) sin(pi x2)
double g1(double x1, double x2);

/// Points in (lo, hi) where f crosses any of the levels, located by sampling
/// on `samples` subintervals and bisection to machine precision.
std::vector<double> find_level_crossings(const std::function<double(double)>& f, double lo,
                                         double hi, std::span<const double> levels,
                                         std::size_t samples = 4000);

/// Heat-equation control problem on (0,1)^2 x (0,0.1) with exponential
/// eigenfunction solutions; one control amplitude with bounds [-25, -1].
/// The closed-form solution stays consistent for any alpha > 0 (default pi^-4).
ProblemSpec example1(std::optional<double> alpha = std::nullopt);

/// Oscillating variant on (0,1)^2 x (0,0.5), bounds [0.2, 0.4], several
/// switching points. Default alpha = 1.
ProblemSpec example2(std::optional<double> alpha = std::nullopt);

/// Uncontrolled smooth problem: y = e^{-t} sin(q pi x1) sin(q pi x2) with
/// f = y_t - Laplace y, and an adjoint p = (e^{-t} - e^{-T}) sin sin whose
/// source y - y_d is built into y_d.
ProblemSpec manufactured_smooth(double horizon = 1.0, int q = 1);

/// Problem by CLI name: "1", "2", or "manufactured".
ProblemSpec problem_by_name(const std::string& name, std::optional<double> alpha = std::nullopt);

}  // namespace parapt
