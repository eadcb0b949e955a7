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
#include <limits>
#include <numbers>

#include "generators.hpp"
#include "parapt/mesh.hpp"
#include "parapt/problems.hpp"

using namespace parapt;
using parapt::testing::Gen;
using std::numbers::pi;

TEST_CASE("mesh counts") {
  struct Case {
    std::size_t n, nodes, tris, dofs;
  };
  for (const Case c : {Case{2, 4, 2, 0}, Case{3, 9, 8, 1}, Case{5, 25, 32, 9}, Case{17, 289, 512, 225}}) {
    const auto m = build_mesh(c.n);
    CHECK(m.n_nodes() == c.nodes);
    CHECK(m.n_triangles() == c.tris);
    CHECK(m.n_interior() == c.dofs);
  }
  CHECK_THROWS_AS(build_mesh(1), MeshError);
}

TEST_CASE("triangles are positively oriented and boundary flags match coordinates") {
  const auto m = build_mesh(7);
  for (std::size_t t = 0; t < m.n_triangles(); ++t) CHECK(m.signed_area(t) > 0.0);
  for (std::size_t i = 0; i < m.n_nodes(); ++i) {
    const auto p = m.nodes()[i];
    const bool on_edge = p.x1 == 0.0 || p.x1 == 1.0 || p.x2 == 0.0 || p.x2 == 1.0;
    CHECK(m.is_boundary(i) == on_edge);
  }
  CHECK(m.nodes()[3 * 7 + 3].x1 == doctest::Approx(0.5));
}

TEST_CASE("reference triangle element matrices") {
  const std::array<Point, 3> v{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  const auto k = element_stiffness(v);
  const double kref[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  const auto m = element_mass(v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(k[i][j] == doctest::Approx(kref[i][j]).epsilon(1e-15));
      CHECK(m[i][j] == doctest::Approx((i == j ? 2.0 : 1.0) / 24.0).epsilon(1e-15));
    }
}

TEST_CASE("stiffness equals the five-point stencil on this triangulation") {
  const auto mesh = build_mesh(6);
  const auto k = assemble_stiffness(mesh);
  const std::size_t n = 4;  // interior nodes per side
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) {
      const long ri = static_cast<long>(r % n), rj = static_cast<long>(r / n);
      const long ci = static_cast<long>(c % n), cj = static_cast<long>(c / n);
      const long dist = std::labs(ri - ci) + std::labs(rj - cj);
      const double expect = r == c ? 4.0 : (dist == 1 ? -1.0 : 0.0);
      CHECK(k.at(r, c) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("assembled matrices are symmetric and positive definite") {
  Gen gen(21);
  const SpatialDiscretization s(9);
  CHECK(s.mass.symmetry_defect() == 0.0);
  CHECK(s.stiffness.symmetry_defect() == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = gen.vec(s.n_dofs());
    CHECK(kernels::dot(x, s.mass.matvec(x)) > 0.0);
    CHECK(kernels::dot(x, s.stiffness.matvec(x)) > 0.0);
  }
}

TEST_CASE("mass row sums and stiffness kernel on rows away from the boundary") {
  const auto mesh = build_mesh(8);
  const auto m = assemble_mass(mesh);
  const auto k = assemble_stiffness(mesh);
  const double h = mesh.h();
  const Vector ones(m.cols(), 1.0);
  const Vector mr = m.matvec(ones), kr = k.matvec(ones);
  for (std::size_t d = 0; d < m.rows(); ++d) {
    const auto p = mesh.nodes()[mesh.node_of_dof(d)];
    const bool deep = p.x1 > 1.5 * h && p.x1 < 1 - 1.5 * h && p.x2 > 1.5 * h && p.x2 < 1 - 1.5 * h;
    if (!deep) continue;
    CHECK(mr[d] == doctest::Approx(h * h).epsilon(1e-13));
    CHECK(std::fabs(kr[d]) < 1e-12);
    CHECK(mesh.lumped_weights()[d] == doctest::Approx(h * h).epsilon(1e-13));
  }
}

TEST_CASE("interpolation") {
  const auto m3 = build_mesh(3);
  CHECK(interpolate(m3, [](double, double) { return 0.0; }) == Vector{0.0});
  CHECK(interpolate(m3, g1)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(interpolate(m3, [](double x, double y) { return x * (1 - x) * y * (1 - y); })[0] == 0.0625);
  CHECK_THROWS_AS(interpolate(m3, [](double, double) { return std::numeric_limits<double>::quiet_NaN(); }),
                  MeshError);
}

TEST_CASE("norms of the interpolated first eigenfunction") {
  const SpatialDiscretization s(65);
  const auto g = interpolate(s.mesh, g1);
  CHECK(std::fabs(l2_norm(s.mass, g) - 0.5) < 1e-3);
  CHECK(linf_norm(g) == doctest::Approx(1.0).epsilon(1e-15));
  // int |g1| = 4 / pi^2, lumped quadrature is first-order accurate at worst
  CHECK(l1_norm(s.mesh, g) == doctest::Approx(4.0 / (pi * pi)).epsilon(2e-3));
  const Vector zero(s.n_dofs(), 0.0);
  CHECK(l2_norm(s.mass, zero) == 0.0);
  CHECK(linf_norm(zero) == 0.0);
  CHECK(l1_norm(s.mesh, zero) == 0.0);
}

TEST_CASE("interpolated L2 norm converges with rate 2") {
  double prev = 0.0;
  for (std::size_t n : {9, 17, 33, 65}) {
    const SpatialDiscretization s(n);
    const double err = std::fabs(l2_norm(s.mass, interpolate(s.mesh, g1)) - 0.5);
    if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("norm dimension mismatch") {
  const SpatialDiscretization s(5);
  CHECK_THROWS(l2_inner(s.mass, Vector(3, 1.0), Vector(3, 1.0)));
}
