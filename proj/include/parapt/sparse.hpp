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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parapt/kernels.hpp"

namespace parapt {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class SparseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compressed-sparse-row matrix, immutable after assembly.
///
/// Rows hold strictly increasing column indices; duplicate triplets are
/// summed during assembly.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(std::size_t n_rows, std::size_t n_cols,
                                    std::span<const Triplet> triplets);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::uint32_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  /// Entry (r, c), zero when not stored.
  double at(std::size_t r, std::size_t c) const;
  Vector diagonal() const;

  void matvec(std::span<const double> x, std::span<double> y) const;
  Vector matvec(std::span<const double> x) const;

  /// Largest |A_ij - A_ji| over the stored pattern.
  double symmetry_defect() const;

  kernels::CsrView view() const;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::uint32_t> col_indices_;
  Vector values_;
};

/// c1 * A + c2 * B for matrices of equal shape.
SparseMatrix linear_combination(double c1, const SparseMatrix& a, double c2, const SparseMatrix& b);

inline Vector matvec(const SparseMatrix& a, std::span<const double> x) { return a.matvec(x); }

struct CgOptions {
  double tol = 1e-12;
  // 0 selects 10 * n.
  std::size_t max_iter = 0;
};

struct CgResult {
  Vector x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Thrown when CG does not reach the requested relative residual.
class CgFailure : public std::runtime_error {
 public:
  CgFailure(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems.
///
/// Converged means ||A x - b||_2 <= tol * ||b||_2 for the true residual.
/// `x0`, when non-empty, is used as the starting iterate.
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& opts = {},
                  std::span<const double> x0 = {});

}  // namespace parapt
