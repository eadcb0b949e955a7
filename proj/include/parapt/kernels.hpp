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
#include <string_view>

// Dense vector and CSR kernels used by the inner solves.
//
// Every kernel has a scalar reference implementation. Wider variants are
// compiled per instruction set and selected once at runtime; the scalar
// path is always available and can be forced with set_force_scalar() or
// the PARAPT_FORCE_SCALAR environment variable.
namespace parapt::kernels {

/// Raw view of a compressed-sparse-row matrix.
struct CsrView {
  std::size_t n_rows = 0;
  const std::size_t* row_offsets = nullptr;
  const std::uint32_t* col_indices = nullptr;
  const double* values = nullptr;
};

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = x + a * y
  void (*xpay)(const double* x, double a, double* y, std::size_t n);
  // z = x * y (elementwise)
  void (*hadamard)(const double* x, const double* y, double* z, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  // y = A x
  void (*spmv)(const CsrView& a, const double* x, double* y);
};

const KernelTable& scalar_kernels();
#if defined(PARAPT_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

/// Kernel table chosen for this process (best supported ISA unless forced).
const KernelTable& active();

/// True when an AVX2 table was compiled in and the CPU supports it.
bool avx2_available();

void set_force_scalar(bool force);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), y.size());
}
inline void xpay(std::span<const double> x, double a, std::span<double> y) {
  active().xpay(x.data(), a, y.data(), y.size());
}
inline void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> z) {
  active().hadamard(x.data(), y.data(), z.data(), z.size());
}
inline double max_abs(std::span<const double> x) {
  return active().max_abs(x.data(), x.size());
}

}  // namespace parapt::kernels
