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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "parapt/errors_eoc.hpp"
#include "parapt/quadrature.hpp"
#include "parapt/temporal.hpp"
#include "parapt/time_grid.hpp"

using namespace parapt;
using parapt::testing::Gen;

namespace {

TimeFunction scalar(std::function<double(double)> f) {
  return [f](double t) { return SpatialField{f(t)}; };
}

// ||v - w||_{L2(I)} for scalar v and piecewise linear w, by 10-point Gauss
// on the pieces of w.
double l2_distance(const std::function<double(double)>& v, const PiecewiseLinearField& w) {
  const GaussRule& rule = gauss_legendre(10);
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < w.knots.size(); ++j)
    s += rule.integrate([&](double t) { const double d = v(t) - w.at(t)[0]; return d * d; }, w.knots[j],
                        w.knots[j + 1]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("uniform grid arithmetic") {
  const auto g = TimeGrid::uniform(0.1, 4);
  CHECK(g.k_max() == doctest::Approx(0.025));
  const double mids[4] = {0.0125, 0.0375, 0.0625, 0.0875};
  for (int m = 0; m < 4; ++m) CHECK(g.midpoints()[m] == doctest::Approx(mids[m]).epsilon(1e-14));
  CHECK(g.ratio_min() == doctest::Approx(1.0));
  CHECK(g.ratio_max() == doctest::Approx(1.0));

  const auto one = TimeGrid::uniform(1.0, 1);
  CHECK(one.dual_nodes() == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(TimeGrid::uniform(1.0, 0), TimeGridError);
  CHECK_THROWS_AS(TimeGrid::uniform(0.0, 3), TimeGridError);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.0, 0.5, 0.5, 1.0}), TimeGridError);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.1, 0.5}), TimeGridError);
}

TEST_CASE("steps telescope to the horizon on random grids") {
  Gen gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double T = gen.real(0.05, 3.0);
    const auto g = gen.grid(T, gen.index(1, 200));
    double s = 0.0;
    for (double k : g.steps()) s += k;
    CHECK(std::fabs(s - T) <= 1e-14 * T * 10);
    CHECK(g.ratio_min() >= 1.0 / 3.0 - 1e-12);
    CHECK(g.ratio_max() <= 3.0 + 1e-12);
    CHECK(g.dual_nodes().size() == g.intervals() + 2);
  }
}

TEST_CASE("graded grid") {
  const auto g = TimeGrid::graded(1.0, 8, 2.0);
  CHECK(g.node(4) == doctest::Approx(0.25));
  CHECK(g.horizon() == 1.0);
  CHECK_THROWS_AS(TimeGrid::graded(1.0, 8, 0.5), TimeGridError);
}

TEST_CASE("interval means") {
  const auto c = interval_mean_projection([](double) { return SpatialField{3.0, -1.0}; }, TimeGrid::uniform(1.0, 3));
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(c.values[m][0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c.values[m][1] == doctest::Approx(-1.0).epsilon(1e-15));
  }
  CHECK(c.terminal() == SpatialField{0.0, 0.0});

  const auto lin = interval_mean_projection(scalar([](double t) { return t; }), TimeGrid::uniform(1.0, 2));
  CHECK(lin.values[0][0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lin.values[1][0] == doctest::Approx(0.75).epsilon(1e-15));

  const auto sq = interval_mean_projection(scalar([](double t) { return t * t; }), TimeGrid::uniform(1.0, 1));
  CHECK(sq.values[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("midpoint interpolation") {
  const auto c = midpoint_interpolation([](double) { return SpatialField{2.0}; }, TimeGrid::uniform(1.0, 3));
  for (const auto& v : c.values) CHECK(v[0] == 2.0);
  const auto lin = midpoint_interpolation(scalar([](double t) { return t; }), TimeGrid::uniform(1.0, 2));
  CHECK(lin.values[0][0] == 0.25);
  CHECK(lin.values[1][0] == 0.75);
  CHECK(lin.values[2][0] == 1.0);
}

TEST_CASE("interval means are orthogonal projections onto interval constants") {
  Gen gen(32);
  const auto grid = gen.grid(2.0, 7);
  auto v = [](double t) { return std::sin(3.0 * t) + t * t; };
  const auto p = interval_mean_projection(scalar(v), grid);
  const GaussRule& rule = gauss_legendre(10);
  for (std::size_t m = 0; m < grid.intervals(); ++m) {
    const double r = rule.integrate([&](double t) { return v(t) - p.values[m][0]; }, grid.node(m), grid.node(m + 1));
    CHECK(std::fabs(r) < 1e-11);
  }
}

TEST_CASE("midpoint value versus interval mean is second order") {
  // For v = t^2: mean - midpoint value = k^2 / 12 on every interval, so
  // ||Pi v - P v||_{L2(0,1)} = k^2 / 12 <= k^2 ||v''|| = 2 k^2.
  for (std::size_t M : {2, 4, 8, 16}) {
    const auto grid = TimeGrid::uniform(1.0, M);
    auto v = scalar([](double t) { return t * t; });
    const auto mid = midpoint_interpolation(v, grid);
    const auto mean = interval_mean_projection(v, grid);
    double s = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      const double d = mid.values[m][0] - mean.values[m][0];
      s += grid.step(m) * d * d;
    }
    const double k = grid.k_max();
    CHECK(std::sqrt(s) == doctest::Approx(k * k / 12.0).epsilon(1e-10));
    CHECK(std::sqrt(s) <= 2.0 * k * k);
  }
  // v = sin(t): both sides by quadrature
  double prev = 0.0;
  for (std::size_t M : {4, 8, 16, 32}) {
    const auto grid = TimeGrid::uniform(1.0, M);
    auto v = scalar([](double t) { return std::sin(t); });
    const auto mid = midpoint_interpolation(v, grid);
    const auto mean = interval_mean_projection(v, grid);
    double s = 0.0;
    for (std::size_t m = 0; m < M; ++m) s += grid.step(m) * std::pow(mid.values[m][0] - mean.values[m][0], 2);
    const double k = grid.k_max();
    const double rhs = k * k * std::sqrt(0.5 * (1.0 - std::sin(2.0) / 2.0));  // k^2 ||sin||_{L2(0,1)}
    CHECK(std::sqrt(s) <= rhs);
    if (prev > 0.0) CHECK(std::log2(prev / std::sqrt(s)) == doctest::Approx(2.0).epsilon(0.02));
    prev = std::sqrt(s);
  }
}

TEST_CASE("dual projection boundary extrapolation") {
  const auto grid = TimeGrid::uniform(1.0, 4);
  PiecewiseConstantField w{grid, {{1.0}, {5.0}, {2.0}, {-3.0}, {0.0}}};
  const auto p = dual_linear_projection(w);
  CHECK(p.at(0.0)[0] == doctest::Approx(1.5 * 1.0 - 0.5 * 5.0));
  CHECK(p.at(0.375)[0] == doctest::Approx(5.0));
  CHECK(p.at(1.0)[0] == doctest::Approx(1.5 * -3.0 - 0.5 * 2.0));
  CHECK_THROWS_AS(dual_linear_projection(PiecewiseConstantField{TimeGrid::uniform(1.0, 1), {{1.0}, {0.0}}}),
                  TimeGridError);
}

TEST_CASE("dual projection reproduces constants and linear functions") {
  Gen gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t M = gen.index(2, 20);
    const auto grid = trial % 2 ? gen.grid(gen.real(0.1, 2.0), M) : TimeGrid::uniform(1.0, M);
    const double a = gen.real(-2, 2), b = gen.real(-2, 2);
    const auto p = dual_linear_projection(scalar([&](double t) { return a + b * t; }), grid);
    for (int s = 0; s <= 50; ++s) {
      const double t = grid.horizon() * s / 50.0;
      CHECK(p.at(t)[0] == doctest::Approx(a + b * t).epsilon(1e-12));
    }
    const auto c = dual_linear_projection(PiecewiseConstantField{grid, std::vector<SpatialField>(M + 1, {a})});
    for (const auto& v : c.values) CHECK(v[0] == doctest::Approx(a).epsilon(1e-14));
  }
}

TEST_CASE("dual projection works for M = 2 and 3 with overlapping end clauses") {
  for (std::size_t M : {2, 3}) {
    const auto grid = TimeGrid::uniform(1.0, M);
    const auto p = dual_linear_projection(scalar([](double t) { return 1.0 - 2.0 * t; }), grid);
    CHECK(p.at(0.0)[0] == doctest::Approx(1.0));
    CHECK(p.at(1.0)[0] == doctest::Approx(-1.0));
  }
}

TEST_CASE("dual projection is L2 stable on Y_k") {
  Gen gen(34);
  const SpatialDiscretization space(3);  // one dof with mass h^2 = 1/4
  double worst = 0.0;
  for (std::size_t M = 4; M <= 64; M *= 2)
    for (int trial = 0; trial < 20; ++trial) {
      const auto grid = TimeGrid::uniform(1.0, M);
      PiecewiseConstantField w{grid, {}};
      for (std::size_t m = 0; m <= M; ++m) w.values.push_back({gen.real(-1, 1)});
      const double ratio = l2l2_norm(dual_linear_projection(w), space.mass) / l2l2_norm(w, space.mass);
      worst = std::max(worst, ratio);
    }
  CHECK(worst <= 2.0);
}

TEST_CASE("dual projection is second-order accurate for smooth functions") {
  auto v = [](double t) { return std::sin(2.0 * std::numbers::pi * t); };
  double prev = 0.0;
  for (std::size_t M : {8, 16, 32, 64}) {
    const double e = l2_distance(v, dual_linear_projection(scalar(v), TimeGrid::uniform(1.0, M)));
    if (prev > 0.0) CHECK(std::log2(prev / e) == doctest::Approx(2.0).epsilon(0.05));
    prev = e;
  }
}

TEST_CASE("piecewise constant evaluation is left closed with a terminal slot") {
  const auto grid = TimeGrid::uniform(1.0, 2);
  PiecewiseConstantField w{grid, {{1.0}, {2.0}, {7.0}}};
  CHECK(w.at(0.0)[0] == 1.0);
  CHECK(w.at(0.5)[0] == 2.0);
  CHECK(w.at(0.999)[0] == 2.0);
  CHECK(w.at(1.0)[0] == 7.0);
}
