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
#include <stdexcept>
#include <vector>

#include "parapt/mesh.hpp"

namespace parapt {

class TimeGridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Primal partition 0 = t_0 < ... < t_M = T together with its dual
/// partition 0 = t*_0 < t*_1 < ... < t*_M < t*_{M+1} = T, where t*_m are
/// the interval midpoints.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> nodes);

  static TimeGrid uniform(double horizon, std::size_t intervals);
  /// t_m = T (m/M)^exponent. Ratios of neighbouring steps stay bounded, so
  /// the grid is quasi-uniform for any fixed exponent.
  static TimeGrid graded(double horizon, std::size_t intervals, double exponent);

  std::size_t intervals() const { return steps_.size(); }
  double horizon() const { return nodes_.back(); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& steps() const { return steps_; }
  const std::vector<double>& midpoints() const { return midpoints_; }
  /// (0, t*_1, ..., t*_M, T)
  const std::vector<double>& dual_nodes() const { return dual_; }

  double node(std::size_t m) const { return nodes_[m]; }
  double step(std::size_t interval) const { return steps_[interval]; }
  double k_max() const { return k_max_; }

  /// min and max of k_m / k_{m+1} over m (both 1 for M = 1).
  double ratio_min() const { return ratio_min_; }
  double ratio_max() const { return ratio_max_; }

  /// Zero-based interval index containing t; t = T maps to the last one.
  std::size_t interval_of(double t) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> steps_;
  std::vector<double> midpoints_;
  std::vector<double> dual_;
  double k_max_ = 0.0;
  double ratio_min_ = 1.0;
  double ratio_max_ = 1.0;
};

using TimeFunction = std::function<SpatialField(double t)>;

/// Element of Y_k: one spatial field per primal interval plus the value at
/// t = T. values[m] holds the value on interval m (zero-based); values[M]
/// is the terminal value.
struct PiecewiseConstantField {
  TimeGrid grid;
  std::vector<SpatialField> values;

  std::size_t intervals() const { return grid.intervals(); }
  const SpatialField& on_interval(std::size_t m) const { return values[m]; }
  const SpatialField& terminal() const { return values.back(); }
  /// Left-closed evaluation; t = T returns the terminal value.
  const SpatialField& at(double t) const;
};

/// Continuous, piecewise linear in time with nodal spatial values. Knots are
/// the primal nodes for elements of P_k and the dual nodes for elements of
/// P_k* produced by dual_linear_projection.
struct PiecewiseLinearField {
  std::vector<double> knots;
  std::vector<SpatialField> values;

  std::size_t pieces() const { return knots.size() - 1; }
  SpatialField at(double t) const;
  /// Piece index containing t (t = last knot maps to the last piece).
  std::size_t piece_of(double t) const;
};

/// Interval means (1/k_m) int_{I_m} v dt by Gauss quadrature; terminal value 0.
PiecewiseConstantField interval_mean_projection(const TimeFunction& v, const TimeGrid& grid);

/// Values at the interval midpoints; terminal value v(T).
PiecewiseConstantField midpoint_interpolation(const TimeFunction& v, const TimeGrid& grid);

/// Continuous piecewise linear function on the dual partition through the
/// midpoint values; the outermost two dual intervals at each end use the line
/// through the two nearest midpoint values. Requires M >= 2.
PiecewiseLinearField dual_linear_projection(const PiecewiseConstantField& w);
PiecewiseLinearField dual_linear_projection(const TimeFunction& v, const TimeGrid& grid);

}  // namespace parapt
