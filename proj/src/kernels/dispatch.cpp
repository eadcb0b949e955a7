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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "parapt/kernels.hpp"

namespace parapt::kernels {
namespace {

bool env_forces_scalar() {
  const char* v = std::getenv("PARAPT_FORCE_SCALAR");
  return v != nullptr && std::string_view(v) != "" && std::string_view(v) != "0";
}

std::atomic<bool>& force_flag() {
  static std::atomic<bool> flag{env_forces_scalar()};
  return flag;
}

}  // namespace

bool avx2_available() {
#if defined(PARAPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

void set_force_scalar(bool force) { force_flag().store(force, std::memory_order_relaxed); }

const KernelTable& active() {
  if (force_flag().load(std::memory_order_relaxed)) return scalar_kernels();
#if defined(PARAPT_HAVE_AVX2)
  if (avx2_available()) return avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace parapt::kernels
