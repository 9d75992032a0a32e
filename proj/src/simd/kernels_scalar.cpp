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

#include "qdl/simd/kernels.hpp"

namespace qdl::simd {

namespace {

void overlaps_scalar(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, cplx *out) {
    for (std::size_t j = 0; j < count; ++j) {
        const cplx *r = rows + j * d;
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            re += r[i].real() * x[i].real() + r[i].imag() * x[i].imag();
            im += r[i].real() * x[i].imag() - r[i].imag() * x[i].real();
        }
        out[j] = {re, im};
    }
}

void overlap_norms_scalar(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, double *out) {
    for (std::size_t j = 0; j < count; ++j) {
        cplx c;
        overlaps_scalar(rows + j * d, 1, d, x, &c);
        out[j] = std::norm(c);
    }
}

void combine_scalar(const cplx *rows, std::size_t count, std::size_t d, const cplx *coeff, cplx *y) {
    for (std::size_t j = 0; j < count; ++j) {
        const cplx *r = rows + j * d;
        const cplx c = coeff[j];
        for (std::size_t i = 0; i < d; ++i) y[i] += c * r[i];
    }
}

void abs2_scalar(const cplx *v, std::size_t n, double *out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
}

constexpr KernelTable kScalar{"scalar", overlaps_scalar, overlap_norms_scalar, combine_scalar, abs2_scalar};

}  // namespace

const KernelTable &scalar_kernels() noexcept { return kScalar; }

}  // namespace qdl::simd
