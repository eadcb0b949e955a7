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

#include "parapt/mesh.hpp"

#include <cmath>
#include <sstream>

namespace parapt {

StructuredTriMesh::StructuredTriMesh(std::size_t n_per_side) : n_(n_per_side) {
  if (n_per_side < 2) throw MeshError("build_mesh: n_per_side must be at least 2");
  const double step = h();
  nodes_.reserve(n_ * n_);
  dof_of_node_.resize(n_ * n_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      // Exact endpoints so boundary tests like x == 1 hold.
      const double x1 = (i + 1 == n_) ? 1.0 : static_cast<double>(i) * step;
      const double x2 = (j + 1 == n_) ? 1.0 : static_cast<double>(j) * step;
      nodes_.push_back({x1, x2});
      if (i > 0 && j > 0 && i + 1 < n_ && j + 1 < n_) {
        dof_of_node_[j * n_ + i] = interior_nodes_.size();
        interior_nodes_.push_back(j * n_ + i);
      }
    }
  }
  triangles_.reserve(2 * (n_ - 1) * (n_ - 1));
  for (std::size_t j = 0; j + 1 < n_; ++j) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const std::size_t ll = j * n_ + i;
      const std::size_t lr = ll + 1;
      const std::size_t ul = ll + n_;
      const std::size_t ur = ul + 1;
      triangles_.push_back({ll, lr, ur});
      triangles_.push_back({ll, ur, ul});
    }
  }
  lumped_.assign(interior_nodes_.size(), 0.0);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const double third = signed_area(t) / 3.0;
    for (std::size_t v : triangles_[t])
      if (auto d = dof_of_node_[v]) lumped_[*d] += third;
  }
}

double StructuredTriMesh::signed_area(std::size_t triangle) const {
  const auto& tri = triangles_[triangle];
  const Point& a = nodes_[tri[0]];
  const Point& b = nodes_[tri[1]];
  const Point& c = nodes_[tri[2]];
  return 0.5 * ((b.x1 - a.x1) * (c.x2 - a.x2) - (c.x1 - a.x1) * (b.x2 - a.x2));
}

std::array<std::array<double, 3>, 3> element_stiffness(const std::array<Point, 3>& v) {
  const double det = (v[1].x1 - v[0].x1) * (v[2].x2 - v[0].x2) -
                     (v[2].x1 - v[0].x1) * (v[1].x2 - v[0].x2);
  const double area = 0.5 * std::fabs(det);
  // grad(phi_i) = (y_{i+1} - y_{i+2}, x_{i+2} - x_{i+1}) / det
  std::array<std::array<double, 2>, 3> grad{};
  for (int i = 0; i < 3; ++i) {
    const Point& p1 = v[(i + 1) % 3];
    const Point& p2 = v[(i + 2) % 3];
    grad[i] = {(p1.x2 - p2.x2) / det, (p2.x1 - p1.x1) / det};
  }
  std::array<std::array<double, 3>, 3> k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k[i][j] = area * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
  return k;
}

std::array<std::array<double, 3>, 3> element_mass(const std::array<Point, 3>& v) {
  const double area = 0.5 * std::fabs((v[1].x1 - v[0].x1) * (v[2].x2 - v[0].x2) -
                                      (v[2].x1 - v[0].x1) * (v[1].x2 - v[0].x2));
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
  return m;
}

namespace {

template <typename ElementMatrix>
SparseMatrix assemble_interior(const StructuredTriMesh& mesh, ElementMatrix element) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.n_triangles());
  for (const auto& tri : mesh.triangles()) {
    const std::array<Point, 3> v{mesh.nodes()[tri[0]], mesh.nodes()[tri[1]], mesh.nodes()[tri[2]]};
    const auto local = element(v);
    for (int a = 0; a < 3; ++a) {
      const auto row = mesh.dof(tri[a]);
      if (!row) continue;
      for (int b = 0; b < 3; ++b)
        if (const auto col = mesh.dof(tri[b])) triplets.push_back({*row, *col, local[a][b]});
    }
  }
  return SparseMatrix::from_triplets(mesh.n_interior(), mesh.n_interior(), triplets);
}

}  // namespace

SparseMatrix assemble_mass(const StructuredTriMesh& mesh) {
  return assemble_interior(mesh, element_mass);
}

SparseMatrix assemble_stiffness(const StructuredTriMesh& mesh) {
  return assemble_interior(mesh, element_stiffness);
}

SpatialField interpolate(const StructuredTriMesh& mesh, const SpatialFunction& f) {
  SpatialField u(mesh.n_interior());
  for (std::size_t d = 0; d < u.size(); ++d) {
    const Point& p = mesh.nodes()[mesh.node_of_dof(d)];
    u[d] = f(p.x1, p.x2);
    if (!std::isfinite(u[d])) {
      std::ostringstream msg;
      msg << "interpolate: non-finite value " << u[d] << " at node " << mesh.node_of_dof(d) << " ("
          << p.x1 << ", " << p.x2 << ")";
      throw MeshError(msg.str());
    }
  }
  return u;
}

double l2_inner(const SparseMatrix& mass, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.size() != mass.rows())
    throw MeshError("l2_inner: dimension mismatch");
  const Vector mv = mass.matvec(v);
  return kernels::dot(u, mv);
}

double l2_norm(const SparseMatrix& mass, std::span<const double> u) {
  return std::sqrt(std::fmax(l2_inner(mass, u, u), 0.0));
}

double linf_norm(std::span<const double> u) { return kernels::max_abs(u); }

double l1_norm(const StructuredTriMesh& mesh, std::span<const double> u) {
  if (u.size() != mesh.n_interior()) throw MeshError("l1_norm: dimension mismatch");
  double s = 0.0;
  const Vector& w = mesh.lumped_weights();
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * std::fabs(u[i]);
  return s;
}

SpatialDiscretization::SpatialDiscretization(std::size_t n_per_side)
    : mesh(n_per_side), mass(assemble_mass(mesh)), stiffness(assemble_stiffness(mesh)) {}

}  // namespace parapt
