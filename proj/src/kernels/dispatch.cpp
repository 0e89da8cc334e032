// Copyright 2026 The ExtremeCast Authors
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

#include <cstdlib>
#include <string_view>

#include "extremecast/kernels.hpp"

namespace extremecast::kernels {

#if defined(EXTREMECAST_HAVE_AVX2)
bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {

const KernelTable& select_table() {
  const char* forced = std::getenv("EXTREMECAST_ISA");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
#if defined(EXTREMECAST_HAVE_AVX2)
  if (avx2_supported()) return avx2_table();
#endif
#if defined(EXTREMECAST_HAVE_NEON)
  return neon_table();
#endif
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

std::string_view active_isa() { return active().isa; }

}  // namespace extremecast::kernels
