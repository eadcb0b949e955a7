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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "parapt/sparse.hpp"

namespace parapt {

/// Nodal coefficients on the interior dofs of a mesh. Boundary values are
/// implicitly zero (homogeneous Dirichlet).
using SpatialField = Vector;

using SpatialFunction = std::function<double(double x1, double x2)>;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x1;
  double x2;
};

/// Uniform triangulation of the unit square. Each cell is split along the
/// diagonal from its lower-left to its upper-right corner; nodes are numbered
/// row-major (x1 fastest).
class StructuredTriMesh {
 public:
  explicit StructuredTriMesh(std::size_t n_per_side);

  std::size_t n_per_side() const { return n_; }
  double h() const { return 1.0 / static_cast<double>(n_ - 1); }
  std::size_t n_nodes() const { return nodes_.size(); }
  std::size_t n_triangles() const { return triangles_.size(); }
  std::size_t n_interior() const { return interior_nodes_.size(); }

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<std::array<std::size_t, 3>>& triangles() const { return triangles_; }

  bool is_boundary(std::size_t node) const { return !dof_of_node_[node].has_value(); }
  std::optional<std::size_t> dof(std::size_t node) const { return dof_of_node_[node]; }
  std::size_t node_of_dof(std::size_t dof) const { return interior_nodes_[dof]; }

  double signed_area(std::size_t triangle) const;

  /// Lumped vertex weights sum_{T containing i} |T|/3 per interior dof.
  const Vector& lumped_weights() const { return lumped_; }

 private:
  std::size_t n_;
  std::vector<Point> nodes_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<std::optional<std::size_t>> dof_of_node_;
  std::vector<std::size_t> interior_nodes_;
  Vector lumped_;
};

inline StructuredTriMesh build_mesh(std::size_t n_per_side) { return StructuredTriMesh(n_per_side); }

/// Element matrices of a P1 triangle, vertex order as given.
std::array<std::array<double, 3>, 3> element_stiffness(const std::array<Point, 3>& v);
std::array<std::array<double, 3>, 3> element_mass(const std::array<Point, 3>& v);

/// Mass and stiffness matrices restricted to interior dofs.
SparseMatrix assemble_mass(const StructuredTriMesh& mesh);
SparseMatrix assemble_stiffness(const StructuredTriMesh& mesh);

/// Nodal interpolation at interior nodes; throws on non-finite values.
SpatialField interpolate(const StructuredTriMesh& mesh, const SpatialFunction& f);

double l2_inner(const SparseMatrix& mass, std::span<const double> u, std::span<const double> v);
double l2_norm(const SparseMatrix& mass, std::span<const double> u);
double linf_norm(std::span<const double> u);
double l1_norm(const StructuredTriMesh& mesh, std::span<const double> u);

/// Mesh plus its assembled operators; everything a solver needs in space.
struct SpatialDiscretization {
  explicit SpatialDiscretization(std::size_t n_per_side);

  StructuredTriMesh mesh;
  SparseMatrix mass;
  SparseMatrix stiffness;

  std::size_t n_dofs() const { return mesh.n_interior(); }
};

}  // namespace parapt
