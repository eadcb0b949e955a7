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
#include <variant>
#include <vector>

#include "parapt/mesh.hpp"
#include "parapt/time_grid.hpp"

namespace parapt {

/// Continuous scalar function of time, affine between strictly increasing
/// knots. Evaluation outside the knot range extends the end pieces.
struct PiecewiseLinearFunction {
  std::vector<double> knots;
  std::vector<double> values;

  double operator()(double t) const;
  std::size_t piece_of(double t) const;
  /// Exact integral over [a, b] of this function times the affine weight
  /// w(t) = w0 + (w1 - w0)(t - a)/(b - a).
  double integrate_against_linear(double a, double b, double w0, double w1) const;
};

/// Scalar temporal factor of a separable space-time term.
///
/// Smooth factors are integrated by Gauss quadrature with the integration
/// range split at the listed kink locations (points where the function is
/// only Lipschitz, e.g. clamp switching times). Piecewise linear factors are
/// integrated exactly.
class TemporalFunction {
 public:
  struct Smooth {
    std::function<double(double)> f;
    std::vector<double> kinks;
  };

  TemporalFunction() : impl_(0.0) {}
  static TemporalFunction constant(double c) { return TemporalFunction(Impl(c)); }
  static TemporalFunction smooth(std::function<double(double)> f, std::vector<double> kinks = {});
  static TemporalFunction piecewise_linear(PiecewiseLinearFunction p) {
    return TemporalFunction(Impl(std::move(p)));
  }

  double operator()(double t) const;

  bool is_constant() const { return std::holds_alternative<double>(impl_); }
  bool is_piecewise_linear() const { return std::holds_alternative<PiecewiseLinearFunction>(impl_); }

  /// int_a^b f(t) w(t) dt for the affine weight with w(a) = w0, w(b) = w1.
  double integrate_against_linear(double a, double b, double w0, double w1) const;
  double integrate(double a, double b) const { return integrate_against_linear(a, b, 1.0, 1.0); }

 private:
  using Impl = std::variant<double, Smooth, PiecewiseLinearFunction>;
  explicit TemporalFunction(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

/// Integrals of a temporal factor against the two linear pieces of the hat
/// functions on each primal interval I_m = [t_{m-1}, t_m]:
///   down[m] = int_{I_m} f(t) (t_m - t)/k_m dt
///   up[m]   = int_{I_m} f(t) (t - t_{m-1})/k_m dt
struct HatMoments {
  std::vector<double> down;
  std::vector<double> up;
};

HatMoments hat_moments(const TemporalFunction& f, const TimeGrid& grid);

/// Separable source term f(t) * g(x). `spatial` holds interior nodal values
/// of g; the pairing with test functions uses the mass matrix.
struct RhsTerm {
  TemporalFunction temporal;
  SpatialField spatial;
};

}  // namespace parapt
