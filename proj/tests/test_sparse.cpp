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
#include <vector>

#include "generators.hpp"
#include "parapt/sparse.hpp"
#include "parapt/verify.hpp"

using namespace parapt;
using parapt::testing::Gen;

TEST_CASE("assembly sums duplicates") {
  const std::vector<Triplet> t{{0, 0, 1.0}, {0, 0, 2.0}};
  const auto a = SparseMatrix::from_triplets(2, 2, t);
  CHECK(a.nonzeros() == 1);
  CHECK(a.at(0, 0) == 3.0);
  CHECK(a.at(1, 1) == 0.0);
}

TEST_CASE("empty matrix multiplies to zero") {
  const auto a = SparseMatrix::from_triplets(3, 3, {});
  CHECK(a.matvec(Vector{1.0, 2.0, 3.0}) == Vector{0.0, 0.0, 0.0});
}

TEST_CASE("identity") {
  CHECK(SparseMatrix::identity(3).matvec(Vector{1.0, 2.0, 3.0}) == Vector{1.0, 2.0, 3.0});
}

TEST_CASE("out-of-range triplets and shape mismatches are rejected") {
  const std::vector<Triplet> bad{{2, 0, 1.0}};
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, bad), SparseError);
  CHECK_THROWS(SparseMatrix::identity(3).matvec(Vector{1.0, 2.0}));
}

TEST_CASE("rows are sorted with strictly increasing columns") {
  Gen gen(3);
  std::vector<Triplet> t;
  for (int i = 0; i < 200; ++i) t.push_back({gen.index(0, 9), gen.index(0, 9), gen.real(-1, 1)});
  const auto a = SparseMatrix::from_triplets(10, 10, t);
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  CHECK(off.size() == 11);
  CHECK(off.back() == a.nonzeros());
  for (std::size_t r = 0; r < 10; ++r)
    for (std::size_t j = off[r] + 1; j < off[r + 1]; ++j) CHECK(col[j - 1] < col[j]);
}

TEST_CASE("matvec agrees with a dense product on random instances") {
  Gen gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.index(1, 50);
    const auto a = gen.spd(n);
    const auto d = parapt::testing::dense_of(a);
    const Vector x = gen.vec(n);
    const Vector y = a.matvec(x);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0, mag = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        s += d[r * n + c] * x[c];
        mag += std::fabs(d[r * n + c] * x[c]);
      }
      CHECK(std::fabs(y[r] - s) <= 1e-14 * mag);
    }
    CHECK(a.symmetry_defect() == 0.0);
  }
}

TEST_CASE("cg on small diagonal systems") {
  auto r = cg_solve(SparseMatrix::identity(2), Vector{4.0, 5.0});
  CHECK(r.x == Vector{4.0, 5.0});
  CHECK(r.iterations <= 1);

  const std::vector<Triplet> t{{0, 0, 2.0}, {1, 1, 4.0}};
  r = cg_solve(SparseMatrix::from_triplets(2, 2, t), Vector{2.0, 4.0});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cg on the 1D Laplacian matches a dense solve") {
  const std::size_t n = 10;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  const auto a = SparseMatrix::from_triplets(n, n, t);
  const Vector b(n, 1.0);
  const auto r = cg_solve(a, b);
  const Vector x = verify::dense_solve(parapt::testing::dense_of(a), b, n);
  for (std::size_t i = 0; i < n; ++i) CHECK(r.x[i] == doctest::Approx(x[i]).epsilon(1e-10));
  // closed form x_i = (i+1)(n-i)/2
  for (std::size_t i = 0; i < n; ++i)
    CHECK(r.x[i] == doctest::Approx(0.5 * static_cast<double>((i + 1) * (n - i))).epsilon(1e-10));
}

TEST_CASE("cg reaches the requested residual on random SPD matrices") {
  Gen gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = gen.index(1, 60);
    const auto a = gen.spd(n);
    const Vector b = gen.vec(n);
    const auto r = cg_solve(a, b);
    Vector res = a.matvec(r.x);
    double rn = 0.0, bn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rn += (res[i] - b[i]) * (res[i] - b[i]);
      bn += b[i] * b[i];
    }
    CHECK(std::sqrt(rn) <= 1e-12 * std::sqrt(bn) * (1.0 + 1e-9));
  }
}

TEST_CASE("cg failure modes") {
  const std::vector<Triplet> zero_diag{{0, 1, 1.0}, {1, 0, 1.0}};
  CHECK_THROWS_AS(cg_solve(SparseMatrix::from_triplets(2, 2, zero_diag), Vector{1.0, 1.0}), SparseError);

  const std::size_t n = 30;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  CgOptions opts;
  opts.max_iter = 2;
  try {
    cg_solve(SparseMatrix::from_triplets(n, n, t), Vector(n, 1.0), opts);
    FAIL("expected CgFailure");
  } catch (const CgFailure& e) {
    CHECK(e.residual() > 1e-12);
  }
}

TEST_CASE("zero right-hand side gives zero") {
  const auto r = cg_solve(SparseMatrix::identity(3), Vector(3, 0.0));
  CHECK(r.x == Vector(3, 0.0));
}

TEST_CASE("linear combination") {
  Gen gen(6);
  const auto a = gen.spd(8), b = gen.spd(8);
  const auto c = linear_combination(2.0, a, -0.5, b);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(c.at(i, j) == doctest::Approx(2.0 * a.at(i, j) - 0.5 * b.at(i, j)));
}
