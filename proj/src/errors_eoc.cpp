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

#include "parapt/errors_eoc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parapt/quadrature.hpp"

namespace parapt {

FieldNorms space_time_norms(std::span<const double> breaks,
                            const std::function<SpatialField(std::size_t, double)>& diff,
                            const SpatialDiscretization& space) {
  const GaussRule& rule = gauss_legendre(kTimeGaussPoints);
  FieldNorms n;
  double l2_sq = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j];
    const double b = breaks[j + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const SpatialField d = diff(j, mid + half * rule.nodes[q]);
      const double w = half * rule.weights[q];
      n.l1 += w * l1_norm(space.mesh, d);
      l2_sq += w * l2_inner(space.mass, d, d);
      n.linf = std::max(n.linf, linf_norm(d));
    }
    n.linf = std::max(n.linf, linf_norm(diff(j, a)));
    n.linf = std::max(n.linf, linf_norm(diff(j, b)));
  }
  n.l2 = std::sqrt(l2_sq);
  return n;
}

FieldNorms field_error_norms(const TimeFunction& exact, const PiecewiseConstantField& approx,
                             const SpatialDiscretization& space) {
  return space_time_norms(
      approx.grid.nodes(),
      [&](std::size_t m, double t) {
        SpatialField d = exact(t);
        kernels::axpy(-1.0, approx.values[m], d);
        return d;
      },
      space);
}

FieldNorms field_error_norms(const TimeFunction& exact, const PiecewiseLinearField& approx,
                             const SpatialDiscretization& space) {
  return space_time_norms(
      approx.knots,
      [&](std::size_t j, double t) {
        const double s = (t - approx.knots[j]) / (approx.knots[j + 1] - approx.knots[j]);
        SpatialField d = exact(t);
        kernels::axpy(-(1.0 - s), approx.values[j], d);
        kernels::axpy(-s, approx.values[j + 1], d);
        return d;
      },
      space);
}

PiecewiseConstantField restrict_means(const PiecewiseConstantField& fine, const TimeGrid& coarse) {
  const TimeGrid& fg = fine.grid;
  const double tol = 1e-12 * fg.horizon();
  if (std::fabs(fg.horizon() - coarse.horizon()) > tol)
    throw std::invalid_argument("restrict_means: horizons differ");
  const std::size_t n = fine.values.front().size();
  PiecewiseConstantField out{coarse, std::vector<SpatialField>(coarse.intervals() + 1, SpatialField(n, 0.0))};
  std::size_t f = 0;
  for (std::size_t m = 0; m < coarse.intervals(); ++m) {
    const double end = coarse.node(m + 1);
    const double start = coarse.node(m);
    if (std::fabs(fg.node(f) - start) > tol) throw std::invalid_argument("restrict_means: grids are not nested");
    while (f < fg.intervals() && fg.node(f + 1) <= end + tol) {
      kernels::axpy(fg.step(f) / coarse.step(m), fine.values[f], out.values[m]);
      ++f;
    }
    if (std::fabs(fg.node(f) - end) > tol) throw std::invalid_argument("restrict_means: grids are not nested");
  }
  return out;
}

FieldNorms difference_norms(const PiecewiseConstantField& a, const PiecewiseConstantField& b,
                            const SpatialDiscretization& space) {
  if (a.intervals() != b.intervals()) throw std::invalid_argument("difference_norms: grids differ");
  return space_time_norms(
      a.grid.nodes(),
      [&](std::size_t m, double) {
        SpatialField d = a.values[m];
        kernels::axpy(-1.0, b.values[m], d);
        return d;
      },
      space);
}

double l2l2_norm(const PiecewiseConstantField& w, const SparseMatrix& mass) {
  double s = 0.0;
  for (std::size_t m = 0; m < w.intervals(); ++m) s += w.grid.step(m) * l2_inner(mass, w.values[m], w.values[m]);
  return std::sqrt(s);
}

double l2l2_norm(const PiecewiseLinearField& p, const SparseMatrix& mass) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < p.knots.size(); ++j) {
    const auto& a = p.values[j];
    const auto& b = p.values[j + 1];
    const double k = p.knots[j + 1] - p.knots[j];
    s += k / 3.0 * (l2_inner(mass, a, a) + l2_inner(mass, a, b) + l2_inner(mass, b, b));
  }
  return std::sqrt(s);
}

double time_derivative_norm(const PiecewiseLinearField& p, const SparseMatrix& mass) {
  double s = 0.0;
  SpatialField d;
  for (std::size_t j = 0; j + 1 < p.knots.size(); ++j) {
    d = p.values[j + 1];
    kernels::axpy(-1.0, p.values[j], d);
    s += l2_inner(mass, d, d) / (p.knots[j + 1] - p.knots[j]);
  }
  return std::sqrt(s);
}

std::optional<double> eoc(double e_prev, double e_cur, double k_prev, double k_cur) {
  if (!(e_prev > 0.0) || !(e_cur > 0.0) || !(k_prev > 0.0) || !(k_cur > 0.0) || k_prev == k_cur)
    return std::nullopt;
  return std::log(e_prev / e_cur) / std::log(k_prev / k_cur);
}

std::vector<ConvergenceRow> eoc_table(std::span<const LevelErrors> rows) {
  std::vector<ConvergenceRow> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    ConvergenceRow row{rows[r].level, rows[r].intervals, rows[r].k, rows[r].errors, {}};
    if (r > 0)
      for (std::size_t c = 0; c < 3; ++c)
        row.eoc[c] = eoc(rows[r - 1].errors[c], rows[r].errors[c], rows[r - 1].k, rows[r].k);
    out.push_back(row);
  }
  return out;
}

}  // namespace parapt
