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

#include "parapt/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "parapt/quadrature.hpp"

namespace parapt {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw TimeGridError("time grid needs at least one interval");
  if (nodes_.front() != 0.0) throw TimeGridError("time grid must start at t = 0");
  for (std::size_t m = 1; m < nodes_.size(); ++m) {
    const double k = nodes_[m] - nodes_[m - 1];
    if (!(k > 0.0)) throw TimeGridError("time grid nodes must be strictly increasing");
    steps_.push_back(k);
    midpoints_.push_back(0.5 * (nodes_[m - 1] + nodes_[m]));
  }
  dual_.reserve(midpoints_.size() + 2);
  dual_.push_back(0.0);
  dual_.insert(dual_.end(), midpoints_.begin(), midpoints_.end());
  dual_.push_back(nodes_.back());
  k_max_ = *std::max_element(steps_.begin(), steps_.end());
  for (std::size_t m = 0; m + 1 < steps_.size(); ++m) {
    const double r = steps_[m] / steps_[m + 1];
    if (m == 0) ratio_min_ = ratio_max_ = r;
    ratio_min_ = std::min(ratio_min_, r);
    ratio_max_ = std::max(ratio_max_, r);
  }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t intervals) {
  if (!(horizon > 0.0)) throw TimeGridError("time horizon must be positive");
  if (intervals == 0) throw TimeGridError("time grid needs at least one interval");
  std::vector<double> t(intervals + 1);
  for (std::size_t m = 0; m <= intervals; ++m)
    t[m] = horizon * static_cast<double>(m) / static_cast<double>(intervals);
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::graded(double horizon, std::size_t intervals, double exponent) {
  if (!(horizon > 0.0)) throw TimeGridError("time horizon must be positive");
  if (intervals == 0) throw TimeGridError("time grid needs at least one interval");
  if (!(exponent >= 1.0)) throw TimeGridError("grading exponent must be >= 1");
  std::vector<double> t(intervals + 1);
  for (std::size_t m = 0; m <= intervals; ++m)
    t[m] = horizon * std::pow(static_cast<double>(m) / static_cast<double>(intervals), exponent);
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

std::size_t TimeGrid::interval_of(double t) const {
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(idx, intervals() - 1);
}

const SpatialField& PiecewiseConstantField::at(double t) const {
  if (t >= grid.horizon()) return terminal();
  return values[grid.interval_of(t)];
}

std::size_t PiecewiseLinearField::piece_of(double t) const {
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  if (it == knots.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(idx, pieces() - 1);
}

SpatialField PiecewiseLinearField::at(double t) const {
  const std::size_t p = piece_of(t);
  const double t0 = knots[p];
  const double t1 = knots[p + 1];
  const double s = (t - t0) / (t1 - t0);
  const SpatialField& a = values[p];
  const SpatialField& b = values[p + 1];
  SpatialField out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - s) * a[i] + s * b[i];
  return out;
}

PiecewiseConstantField interval_mean_projection(const TimeFunction& v, const TimeGrid& grid) {
  const GaussRule& rule = gauss_legendre(kTimeGaussPoints);
  PiecewiseConstantField out{grid, {}};
  out.values.reserve(grid.intervals() + 1);
  std::size_t dim = 0;
  for (std::size_t m = 0; m < grid.intervals(); ++m) {
    const double a = grid.node(m);
    const double half = 0.5 * grid.step(m);
    SpatialField mean;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const SpatialField vq = v(a + half * (1.0 + rule.nodes[q]));
      if (mean.empty()) mean.assign(vq.size(), 0.0);
      for (std::size_t i = 0; i < vq.size(); ++i) mean[i] += 0.5 * rule.weights[q] * vq[i];
    }
    dim = mean.size();
    out.values.push_back(std::move(mean));
  }
  out.values.emplace_back(dim, 0.0);
  return out;
}

PiecewiseConstantField midpoint_interpolation(const TimeFunction& v, const TimeGrid& grid) {
  PiecewiseConstantField out{grid, {}};
  out.values.reserve(grid.intervals() + 1);
  for (double tm : grid.midpoints()) out.values.push_back(v(tm));
  out.values.push_back(v(grid.horizon()));
  return out;
}

namespace {

SpatialField line_through(double t, double ta, const SpatialField& va, double tb,
                          const SpatialField& vb) {
  const double s = (t - ta) / (tb - ta);
  SpatialField out(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) out[i] = va[i] + s * (vb[i] - va[i]);
  return out;
}

PiecewiseLinearField dual_from_midpoint_values(const TimeGrid& grid,
                                               const std::vector<SpatialField>& mid) {
  const std::size_t M = grid.intervals();
  if (M < 2)
    throw TimeGridError("dual_linear_projection needs at least two intervals (M >= 2)");
  const auto& tm = grid.midpoints();
  PiecewiseLinearField out;
  out.knots = grid.dual_nodes();
  out.values.reserve(M + 2);
  out.values.push_back(line_through(0.0, tm[0], mid[0], tm[1], mid[1]));
  for (std::size_t m = 0; m < M; ++m) out.values.push_back(mid[m]);
  out.values.push_back(line_through(grid.horizon(), tm[M - 2], mid[M - 2], tm[M - 1], mid[M - 1]));
  return out;
}

}  // namespace

PiecewiseLinearField dual_linear_projection(const PiecewiseConstantField& w) {
  return dual_from_midpoint_values(
      w.grid, std::vector<SpatialField>(w.values.begin(), w.values.end() - 1));
}

PiecewiseLinearField dual_linear_projection(const TimeFunction& v, const TimeGrid& grid) {
  std::vector<SpatialField> mid;
  mid.reserve(grid.intervals());
  for (double t : grid.midpoints()) mid.push_back(v(t));
  return dual_from_midpoint_values(grid, mid);
}

}  // namespace parapt
