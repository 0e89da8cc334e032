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

#pragma once

// Dense float64 kernels used by every layer's inner loops.
//
// Each kernel has a scalar reference implementation and, where the build
// target allows it, AVX2+FMA (x86-64) or NEON (aarch64) variants. The active
// table is chosen once per process from CPU capabilities; setting
// EXTREMECAST_ISA=scalar forces the reference path.
//
// Matrices are row-major with `cols` as the leading dimension.

#include <cstddef>
#include <string_view>

namespace extremecast::kernels {

struct KernelTable {
  const char* isa;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha*x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y += W x, W is rows x cols
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y);
  // x_grad += W^T y_grad
  void (*gemv_t)(const double* w, std::size_t rows, std::size_t cols, const double* y_grad,
                 double* x_grad);
  // W += u v^T, u has `rows` entries, v has `cols`
  void (*ger)(double* w, std::size_t rows, std::size_t cols, const double* u, const double* v);
};

const KernelTable& scalar_table();
#if defined(EXTREMECAST_HAVE_AVX2)
const KernelTable& avx2_table();
bool avx2_supported();
#endif
#if defined(EXTREMECAST_HAVE_NEON)
const KernelTable& neon_table();
#endif

// Table selected for this process.
const KernelTable& active();
std::string_view active_isa();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
  active().gemv(w, rows, cols, x, y);
}
inline void gemv_t(const double* w, std::size_t rows, std::size_t cols, const double* y_grad,
                   double* x_grad) {
  active().gemv_t(w, rows, cols, y_grad, x_grad);
}
inline void ger(double* w, std::size_t rows, std::size_t cols, const double* u, const double* v) {
  active().ger(w, rows, cols, u, v);
}

}  // namespace extremecast::kernels
