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

#include "parapt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parapt/quadrature.hpp"
#include "parapt/solvers.hpp"

namespace parapt::verify {

Vector dense_solve(std::vector<double> a, Vector b, std::size_t n) {
  if (a.size() != n * n || b.size() != n) throw std::invalid_argument("dense_solve: shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      b[r] -= f * b[c];
    }
  }
  Vector x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= a[r * n + j] * x[j];
    x[r] = s / a[r * n + r];
  }
  return x;
}

double PolynomialSource::temporal(std::size_t j, double t) const {
  double s = 0.0;
  for (std::size_t r = coefficients[j].size(); r-- > 0;) s = s * t + coefficients[j][r];
  return s;
}

double PolynomialSource::integrate_against_linear(std::size_t j, double a, double b, double w0,
                                                  double w1) const {
  // w(t) = c0 + c1 t, then integrate monomials exactly.
  const double c1 = (w1 - w0) / (b - a);
  const double c0 = w0 - c1 * a;
  auto mono = [&](std::size_t r) {
    return (std::pow(b, static_cast<double>(r + 1)) - std::pow(a, static_cast<double>(r + 1))) /
           static_cast<double>(r + 1);
  };
  double s = 0.0;
  for (std::size_t r = 0; r < coefficients[j].size(); ++r)
    s += coefficients[j][r] * (c0 * mono(r) + c1 * mono(r + 1));
  return s;
}

std::vector<RhsTerm> PolynomialSource::as_rhs_terms() const {
  std::vector<RhsTerm> out;
  for (std::size_t j = 0; j < spatial.size(); ++j) {
    const auto coeffs = coefficients[j];
    out.push_back({TemporalFunction::smooth([coeffs](double t) {
                     double s = 0.0;
                     for (std::size_t r = coeffs.size(); r-- > 0;) s = s * t + coeffs[r];
                     return s;
                   }),
                   spatial[j]});
  }
  return out;
}

SpatialField random_field(std::size_t n_dofs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SpatialField v(n_dofs);
  for (double& x : v) x = dist(rng);
  return v;
}

PolynomialSource random_polynomial_source(std::size_t n_dofs, std::size_t terms, std::size_t degree,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PolynomialSource s;
  for (std::size_t j = 0; j < terms; ++j) {
    std::vector<double> c(degree + 1);
    for (double& x : c) x = dist(rng);
    s.coefficients.push_back(std::move(c));
    s.spatial.push_back(random_field(n_dofs, rng));
  }
  return s;
}

namespace {

std::vector<double> dense(const SparseMatrix& a) {
  std::vector<double> d(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) d[r * a.cols() + c] = a.at(r, c);
  return d;
}

double hat(const TimeGrid& grid, std::size_t j, double t) {
  const auto& x = grid.nodes();
  if (j > 0 && t >= x[j - 1] && t <= x[j]) return (t - x[j - 1]) / (x[j] - x[j - 1]);
  if (j + 1 < x.size() && t >= x[j] && t <= x[j + 1]) return (x[j + 1] - t) / (x[j + 1] - x[j]);
  return 0.0;
}

// Time pairing of the interval indicator chi_{I_i} (one-based i) with hat
// b_j and its derivative: returns (int_{I_i} -b_j', int_{I_i} b_j).
std::pair<double, double> indicator_hat(const TimeGrid& grid, std::size_t i, std::size_t j) {
  const double a = grid.node(i - 1);
  const double b = grid.node(i);
  const double slope = -(hat(grid, j, b) - hat(grid, j, a));
  const double mean = 0.5 * (b - a) * (hat(grid, j, a) + hat(grid, j, b));
  return {slope, mean};
}

// Block (time test j, time trial i) of A, where trial i in 1..M is chi_{I_i}
// and i = M + 1 is the point indicator at T.
void add_block(std::vector<double>& a, std::size_t dim, std::size_t n, std::size_t row_block,
               std::size_t col_block, double cm, const std::vector<double>& m, double ck,
               const std::vector<double>& k) {
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a[(row_block * n + r) * dim + col_block * n + c] += cm * m[r * n + c] + ck * k[r * n + c];
}

}  // namespace

std::vector<SpatialField> dense_state_oracle(const SpatialDiscretization& space, const TimeGrid& grid,
                                             const PolynomialSource& f, const SpatialField& y0) {
  const std::size_t n = space.n_dofs();
  const std::size_t big_m = grid.intervals();
  const std::size_t dim = (big_m + 1) * n;
  const auto m = dense(space.mass);
  const auto k = dense(space.stiffness);
  std::vector<double> a(dim * dim, 0.0);
  Vector rhs(dim, 0.0);

  for (std::size_t j = 0; j <= big_m; ++j) {
    for (std::size_t i = 1; i <= big_m; ++i) {
      const auto [slope, mean] = indicator_hat(grid, i, j);
      if (slope != 0.0 || mean != 0.0) add_block(a, dim, n, j, i - 1, slope, m, mean, k);
    }
    // (y(T), v(T)) with y(T) = alpha_{M+1}
    const double end = hat(grid, j, grid.horizon());
    if (end != 0.0) add_block(a, dim, n, j, big_m, end, m, 0.0, k);

    Vector load(n, 0.0);
    for (std::size_t s = 0; s < f.spatial.size(); ++s) {
      double c = 0.0;
      for (std::size_t i = 1; i <= big_m; ++i) {
        const double ta = grid.node(i - 1);
        const double tb = grid.node(i);
        c += f.integrate_against_linear(s, ta, tb, hat(grid, j, ta), hat(grid, j, tb));
      }
      for (std::size_t r = 0; r < n; ++r) load[r] += c * f.spatial[s][r];
    }
    const double start = hat(grid, j, 0.0);
    for (std::size_t r = 0; r < n; ++r) load[r] += start * y0[r];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rhs[j * n + r] += m[r * n + c] * load[c];
  }

  const Vector x = dense_solve(std::move(a), std::move(rhs), dim);
  std::vector<SpatialField> out(big_m + 1, SpatialField(n));
  for (std::size_t b = 0; b <= big_m; ++b) std::copy_n(x.begin() + static_cast<long>(b * n), n, out[b].begin());
  return out;
}

std::vector<SpatialField> dense_adjoint_oracle(const SpatialDiscretization& space, const TimeGrid& grid,
                                               const PolynomialSource& h) {
  const std::size_t n = space.n_dofs();
  const std::size_t big_m = grid.intervals();
  const std::size_t dim = (big_m + 1) * n;
  const auto m = dense(space.mass);
  const auto k = dense(space.stiffness);
  std::vector<double> a(dim * dim, 0.0);
  Vector rhs(dim, 0.0);

  // Test rows 0..M-1: chi_{I_i} phi; row M: point indicator at T.
  for (std::size_t i = 1; i <= big_m; ++i) {
    for (std::size_t j = 0; j <= big_m; ++j) {
      const auto [slope, mean] = indicator_hat(grid, i, j);
      if (slope != 0.0 || mean != 0.0) add_block(a, dim, n, i - 1, j, slope, m, mean, k);
    }
    Vector load(n, 0.0);
    for (std::size_t s = 0; s < h.spatial.size(); ++s) {
      const double c = h.integrate_against_linear(s, grid.node(i - 1), grid.node(i), 1.0, 1.0);
      for (std::size_t r = 0; r < n; ++r) load[r] += c * h.spatial[s][r];
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rhs[(i - 1) * n + r] += m[r * n + c] * load[c];
  }
  for (std::size_t j = 0; j <= big_m; ++j) {
    const double end = hat(grid, j, grid.horizon());
    if (end != 0.0) add_block(a, dim, n, big_m, j, end, m, 0.0, k);
  }

  const Vector x = dense_solve(std::move(a), std::move(rhs), dim);
  std::vector<SpatialField> out(big_m + 1, SpatialField(n));
  for (std::size_t b = 0; b <= big_m; ++b) std::copy_n(x.begin() + static_cast<long>(b * n), n, out[b].begin());
  return out;
}

double max_relative_difference(const std::vector<SpatialField>& a, const std::vector<SpatialField>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_relative_difference: length mismatch");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw std::invalid_argument("max_relative_difference: size mismatch");
    for (std::size_t r = 0; r < a[i].size(); ++r) {
      diff = std::max(diff, std::fabs(a[i][r] - b[i][r]));
      scale = std::max(scale, std::fabs(b[i][r]));
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

namespace {

double sample_time(const ProblemSpec& p, std::size_t j, std::size_t samples) {
  return p.horizon * (static_cast<double>(j) + 0.5) / static_cast<double>(samples);
}

constexpr double kSamplePoints[3] = {0.25, 0.5, 0.75};

}  // namespace

CheckResult optimality_consistency(const ProblemSpec& problem, std::size_t samples) {
  CheckResult r{problem.name + ": optimality consistency", false, 0.0, 1e-10};
  if (!problem.exact) return r;
  const GaussRule& rule = gauss_legendre(20);
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = sample_time(problem, j, samples);
    for (std::size_t i = 0; i < problem.dim(); ++i) {
      double pair = 0.0;
      for (std::size_t a = 0; a < rule.size(); ++a)
        for (std::size_t b = 0; b < rule.size(); ++b) {
          const double x1 = 0.5 + 0.5 * rule.nodes[a];
          const double x2 = 0.5 + 0.5 * rule.nodes[b];
          pair += 0.25 * rule.weights[a] * rule.weights[b] * problem.g[i](x1, x2) *
                  problem.exact->adjoint(t, x1, x2);
        }
      const double u = problem.bounds.project(i, -pair / problem.alpha);
      r.value = std::max(r.value, std::fabs(u - problem.exact->control.eval(i, t)));
    }
  }
  r.passed = r.value < r.tolerance;
  return r;
}

CheckResult state_residual(const ProblemSpec& problem, std::size_t samples) {
  CheckResult r{problem.name + ": state residual", false, 0.0, 1e-8};
  if (!problem.exact || !problem.exact->state.has_derivatives()) return r;
  const auto& y = problem.exact->state;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = sample_time(problem, j, samples);
    for (double x1 : kSamplePoints)
      for (double x2 : kSamplePoints) {
        double f = problem.g0(t, x1, x2);
        for (std::size_t i = 0; i < problem.dim(); ++i)
          f += problem.exact->control.eval(i, t) * problem.g[i](x1, x2);
        const double res = y.time_derivative(t, x1, x2) - y.laplacian(t, x1, x2) - f;
        r.value = std::max(r.value, std::fabs(res));
      }
  }
  r.passed = r.value < r.tolerance;
  return r;
}

CheckResult adjoint_residual(const ProblemSpec& problem, std::size_t samples) {
  CheckResult r{problem.name + ": adjoint residual", false, 0.0, 1e-8};
  if (!problem.exact || !problem.exact->adjoint.has_derivatives()) return r;
  const auto& p = problem.exact->adjoint;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = sample_time(problem, j, samples);
    for (double x1 : kSamplePoints)
      for (double x2 : kSamplePoints) {
        const double h = problem.exact->state(t, x1, x2) - problem.y_d(t, x1, x2);
        const double res = -p.time_derivative(t, x1, x2) - p.laplacian(t, x1, x2) - h;
        r.value = std::max(r.value, std::fabs(res));
      }
  }
  r.passed = r.value < r.tolerance;
  return r;
}

std::vector<CheckResult> run_selftests() {
  std::vector<CheckResult> out;
  for (const ProblemSpec& p : {example1(), example2(), manufactured_smooth()}) {
    if (p.dim() > 0) out.push_back(optimality_consistency(p));
    out.push_back(state_residual(p));
    out.push_back(adjoint_residual(p));
  }

  std::mt19937_64 rng(20260101);
  const SpatialDiscretization space(5);
  const TimeGrid grid = TimeGrid::uniform(1.0, 4);
  const PolynomialSource f = random_polynomial_source(space.n_dofs(), 2, 3, rng);
  const SpatialField y0 = random_field(space.n_dofs(), rng);
  const auto rhs = f.as_rhs_terms();
  const auto y = solve_state(space, grid, rhs, y0);
  CheckResult rs{"state solver vs dense oracle", false,
                 max_relative_difference(y.values, dense_state_oracle(space, grid, f, y0)), 1e-9};
  rs.passed = rs.value <= rs.tolerance;
  out.push_back(rs);

  AdjointSource src;
  src.terms = f.as_rhs_terms();
  const auto p = solve_adjoint(space, grid, src);
  CheckResult ra{"adjoint solver vs dense oracle", false,
                 max_relative_difference(p.values, dense_adjoint_oracle(space, grid, f)), 1e-9};
  ra.passed = ra.value <= ra.tolerance;
  out.push_back(ra);
  return out;
}

}  // namespace parapt::verify
