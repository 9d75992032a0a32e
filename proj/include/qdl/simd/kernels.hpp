// Copyright 2026 The qdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Inner-loop kernels over blocks of complex vectors stored row-major
// (row j occupies rows[j*d .. j*d + d)). Each kernel has a scalar reference
// and, on x86-64 builds, an AVX2/FMA variant chosen at runtime.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qdl::simd {

using cplx = std::complex<double>;

struct KernelTable {
    const char *name;

    // out[j] = <rows_j | x> = sum_i conj(rows_j[i]) * x[i]
    void (*overlaps)(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, cplx *out);

    // out[j] = |<rows_j | x>|^2
    void (*overlap_norms)(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, double *out);

    // y += sum_j coeff[j] * rows_j
    void (*combine)(const cplx *rows, std::size_t count, std::size_t d, const cplx *coeff, cplx *y);

    // out[i] = |v[i]|^2
    void (*abs2)(const cplx *v, std::size_t n, double *out);
};

enum class Isa { Scalar, Avx2 };

const KernelTable &scalar_kernels() noexcept;

/// AVX2 table when compiled in and supported by this CPU, else nullptr.
const KernelTable *avx2_kernels() noexcept;

/// Active table. Chosen once from CPU features; QDL_SIMD=scalar|avx2 overrides.
const KernelTable &kernels() noexcept;

/// Force a table (tests, benchmarks). Returns false if the ISA is unavailable.
bool select_isa(Isa isa) noexcept;

std::string_view active_isa_name() noexcept;

}  // namespace qdl::simd
