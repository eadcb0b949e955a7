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

#include "generators.hpp"
#include "parapt/control.hpp"
#include "parapt/problems.hpp"

using namespace parapt;
using parapt::testing::Gen;

TEST_CASE("admissible set projection") {
  const AdmissibleSet box({-1.0, 0.2}, {2.0, 0.4});
  CHECK(box.dim() == 2);
  CHECK(box.project(0, -5.0) == -1.0);
  CHECK(box.project(0, 0.5) == 0.5);
  CHECK(box.project(1, 1.0) == 0.4);
  CHECK_THROWS(AdmissibleSet({1.0}, {0.0}));
  CHECK_THROWS(AdmissibleSet({1.0, 2.0}, {3.0}));
}

TEST_CASE("clamp of v = t into [0.25, 0.75]") {
  const AdmissibleSet box({0.25}, {0.75});
  const std::vector<PiecewiseLinearFunction> v{{{0.0, 1.0}, {0.0, 1.0}}};
  const auto u = clamp_control(v, box);
  REQUIRE(u.dim() == 1);
  const auto& c = u.components[0];
  REQUIRE(c.knots.size() == 4);
  CHECK(c.knots[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.knots[2] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c.values == std::vector<double>{0.25, 0.25, 0.75, 0.75});
  CHECK(u.tags[0] == std::vector<PieceTag>{PieceTag::kLowerActive, PieceTag::kInactive, PieceTag::kUpperActive});

  // Against the hats of a single interval [0, 1]:
  //   int u t dt = 1/128 + 13/96 + 21/128 = 59/192,  int u dt = 1/2.
  const auto terms = control_to_rhs_terms(u, std::vector<SpatialField>{{1.0}});
  const auto mom = hat_moments(terms[0].temporal, TimeGrid::uniform(1.0, 1));
  CHECK(mom.up[0] == doctest::Approx(59.0 / 192.0).epsilon(1e-14));
  CHECK(mom.down[0] == doctest::Approx(0.5 - 59.0 / 192.0).epsilon(1e-14));
  CHECK(control_l2_squared(u) == doctest::Approx(0.0625 * 0.25 + (0.421875 - 0.015625) / 3.0 + 0.5625 * 0.25));
}

TEST_CASE("functions inside the box are unchanged") {
  const AdmissibleSet box({-1.0}, {1.0});
  const std::vector<PiecewiseLinearFunction> v{{{0.0, 0.5, 1.0}, {0.1, -0.3, 0.9}}};
  const auto u = clamp_control(v, box);
  CHECK(u.components[0].knots == v[0].knots);
  CHECK(u.components[0].values == v[0].values);
  for (auto tag : u.tags[0]) CHECK(tag == PieceTag::kInactive);
}

TEST_CASE("clamp properties on random piecewise linear functions") {
  Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t D = gen.index(1, 3);
    Vector lo(D), hi(D);
    for (std::size_t i = 0; i < D; ++i) {
      lo[i] = gen.real(-1.0, 0.5);
      hi[i] = lo[i] + gen.real(0.01, 1.0);
    }
    const AdmissibleSet box(lo, hi);
    const auto grid = gen.grid(gen.real(0.1, 2.0), gen.index(1, 25));
    std::vector<PiecewiseLinearFunction> v, w;
    for (std::size_t i = 0; i < D; ++i) {
      v.push_back(gen.pl_function(grid.nodes(), -2.0, 2.0));
      w.push_back(gen.pl_function(grid.nodes(), -2.0, 2.0));
    }
    const auto pv = clamp_control(v, box);
    const auto pw = clamp_control(w, box);
    const auto ppv = clamp_control(pv.components, box);
    const double T = grid.horizon();
    for (std::size_t i = 0; i < D; ++i) {
      CHECK(total_variation(pv.components[i]) <= total_variation(v[i]) + 1e-12);
      REQUIRE(pv.tags[i].size() + 1 == pv.components[i].knots.size());
      for (int s = 0; s <= 200; ++s) {
        const double t = T * s / 200.0;
        const double u = pv.value(i, t);
        // exact pointwise projection
        CHECK(std::fabs(u - box.project(i, v[i](t))) <= 1e-12);
        CHECK(u >= lo[i] - 1e-14);
        CHECK(u <= hi[i] + 1e-14);
        CHECK(std::fabs(ppv.value(i, t) - u) <= 1e-13);
        CHECK(std::fabs(u - pw.value(i, t)) <= std::fabs(v[i](t) - w[i](t)) + 1e-12);
      }
      // tags agree with the midpoint value of each piece
      const auto& c = pv.components[i];
      for (std::size_t j = 0; j < pv.tags[i].size(); ++j) {
        const double mid = 0.5 * (c.knots[j] + c.knots[j + 1]);
        const double val = c(mid);
        if (pv.tags[i][j] == PieceTag::kLowerActive) CHECK(val == doctest::Approx(lo[i]));
        if (pv.tags[i][j] == PieceTag::kUpperActive) CHECK(val == doctest::Approx(hi[i]));
      }
    }
  }
}

TEST_CASE("constant controls are clamped") {
  const AdmissibleSet box({-25.0}, {-1.0});
  const auto u = ClampedLinearControl::constant({0.0}, TimeGrid::uniform(0.1, 4), box);
  CHECK(u.value(0, 0.05) == -1.0);
  CHECK(control_l2_squared(u) == doctest::Approx(0.1));
}

TEST_CASE("B' p for p = t g1 is t times the squared L2 norm of g1") {
  const SpatialDiscretization s(33);
  const auto g = interpolate(s.mesh, g1);
  const auto grid = TimeGrid::uniform(2.0, 5);
  PiecewiseLinearField p{grid.nodes(), {}};
  for (double t : grid.nodes()) {
    auto v = g;
    for (double& x : v) x *= t;
    p.values.push_back(v);
  }
  const auto bp = apply_B_adjoint(p, std::vector<SpatialField>{g}, s.mass);
  const double c = l2_inner(s.mass, g, g);
  CHECK(c == doctest::Approx(0.25).epsilon(2e-3));
  for (double t : {0.0, 0.3, 1.1, 2.0}) CHECK(bp[0](t) == doctest::Approx(c * t).epsilon(1e-13));
}

TEST_CASE("control norms") {
  const AdmissibleSet box({-10.0}, {10.0});
  const double T = 0.7;
  const auto u = ClampedLinearControl::constant({-3.0}, TimeGrid::uniform(T, 3), box);
  ControlReference zero{1, [](std::size_t, double) { return 0.0; }, {}};
  const auto n = control_norms(u, zero, T);
  CHECK(n.l1 == doctest::Approx(3.0 * T));
  CHECK(n.l2 == doctest::Approx(3.0 * std::sqrt(T)));
  CHECK(n.linf == doctest::Approx(3.0));

  // random piecewise linear against a smooth reference, checked with a
  // fine trapezoid rule
  Gen gen(22);
  const auto grid = gen.grid(1.0, 7);
  const std::vector<PiecewiseLinearFunction> v{gen.pl_function(grid.nodes(), -1.0, 1.0)};
  const auto w = clamp_control(v, AdmissibleSet({-0.5}, {0.6}));
  ControlReference ref{1, [](std::size_t, double t) { return std::sin(4.0 * t); }, {}};
  const auto m = control_norms(w, ref, 1.0);
  const std::size_t N = 1000000;
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double t = static_cast<double>(j) / N;
    const double d = std::fabs(w.value(0, t) - std::sin(4.0 * t));
    const double wt = (j == 0 || j == N) ? 0.5 : 1.0;
    l1 += wt * d / N;
    l2 += wt * d * d / N;
    linf = std::max(linf, d);
  }
  CHECK(m.l1 == doctest::Approx(l1).epsilon(1e-8));
  CHECK(m.l2 == doctest::Approx(std::sqrt(l2)).epsilon(1e-8));
  CHECK(m.linf == doctest::Approx(linf).epsilon(1e-4));
  CHECK(control_norms(w, as_reference(w), 1.0).l2 == 0.0);
}

TEST_CASE("total variation") {
  CHECK(total_variation({{0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}}) == doctest::Approx(3.0));
  CHECK(total_variation({{0.0, 1.0}, {5.0, 5.0}}) == 0.0);
}
