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

// Brute-force references for the time-stepping schemes and analytic checks
// of the built-in problems. Slow on purpose; meant for small sizes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "parapt/mesh.hpp"
#include "parapt/problems.hpp"
#include "parapt/temporal.hpp"
#include "parapt/time_grid.hpp"

namespace parapt::verify {

/// Gaussian elimination with partial pivoting on a dense row-major n x n
/// matrix. Throws std::runtime_error when a pivot vanishes.
Vector dense_solve(std::vector<double> a, Vector b, std::size_t n);

/// sum_j (sum_r c_jr t^r) g_j with polynomial temporal factors, so that every
/// time integral has a closed form.
struct PolynomialSource {
  std::vector<std::vector<double>> coefficients;
  std::vector<SpatialField> spatial;

  double temporal(std::size_t j, double t) const;
  /// int_a^b t^r w(t) dt summed over the polynomial of term j, where w is
  /// affine with w(a) = w0 and w(b) = w1.
  double integrate_against_linear(std::size_t j, double a, double b, double w0, double w1) const;
  std::vector<RhsTerm> as_rhs_terms() const;
};

PolynomialSource random_polynomial_source(std::size_t n_dofs, std::size_t terms, std::size_t degree,
                                          std::mt19937_64& rng);
SpatialField random_field(std::size_t n_dofs, std::mt19937_64& rng);

/// Coefficients alpha_1..alpha_{M+1} from one dense solve of the space-time
/// system A(y_k, b_j phi) = int (f, b_j phi) + (y0, b_j(0) phi) for all hats
/// b_j and interior basis functions phi.
std::vector<SpatialField> dense_state_oracle(const SpatialDiscretization& space, const TimeGrid& grid,
                                             const PolynomialSource& f, const SpatialField& y0);

/// Coefficients beta_0..beta_M from one dense solve of
/// A(chi phi, p_k) = int (h, chi phi) over the indicator basis of Y_k.
std::vector<SpatialField> dense_adjoint_oracle(const SpatialDiscretization& space, const TimeGrid& grid,
                                               const PolynomialSource& h);

/// max |a - b| over all coefficients divided by max |b|.
double max_relative_difference(const std::vector<SpatialField>& a, const std::vector<SpatialField>& b);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

/// Largest |P(-(1/alpha) <g_i, p(t)>) - u_i(t)| over `samples` times, with the
/// spatial pairing done by tensor Gauss quadrature on the unit square.
CheckResult optimality_consistency(const ProblemSpec& problem, std::size_t samples = 50);
/// Largest |y_t - Laplace y - g0 - sum u_i g_i| over samples x 3x3 points.
CheckResult state_residual(const ProblemSpec& problem, std::size_t samples = 50);
/// Largest |-p_t - Laplace p - (y - y_d)| over the same points.
CheckResult adjoint_residual(const ProblemSpec& problem, std::size_t samples = 50);

/// Analytic checks of every built-in problem plus a small oracle comparison
/// of both solvers.
std::vector<CheckResult> run_selftests();

}  // namespace parapt::verify
