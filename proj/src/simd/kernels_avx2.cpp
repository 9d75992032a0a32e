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

#include <immintrin.h>

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

namespace qdl::simd {

namespace {

// Horizontal reduction of the two accumulators into one complex number.
// direct lanes: [ar*xr, ai*xi, ...] -> re = sum of all lanes
// swapped lanes: [ar*xi, ai*xr, ...] -> im = lane0 - lane1 + lane2 - lane3
inline cplx reduce_conj_dot(__m256d direct, __m256d swapped) {
    alignas(32) double a[4];
    alignas(32) double b[4];
    _mm256_store_pd(a, direct);
    _mm256_store_pd(b, swapped);
    return {(a[0] + a[2]) + (a[1] + a[3]), (b[0] + b[2]) - (b[1] + b[3])};
}

inline cplx conj_dot(const cplx *r, const cplx *x, std::size_t d) {
    const double *rp = reinterpret_cast<const double *>(r);
    const double *xp = reinterpret_cast<const double *>(x);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    __m256d sw0 = _mm256_setzero_pd(), sw1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4) {
        const __m256d r0 = _mm256_loadu_pd(rp + 2 * i);
        const __m256d r1 = _mm256_loadu_pd(rp + 2 * i + 4);
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        const __m256d x1 = _mm256_loadu_pd(xp + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(r0, x0, acc0);
        acc1 = _mm256_fmadd_pd(r1, x1, acc1);
        sw0 = _mm256_fmadd_pd(r0, _mm256_permute_pd(x0, 0b0101), sw0);
        sw1 = _mm256_fmadd_pd(r1, _mm256_permute_pd(x1, 0b0101), sw1);
    }
    if (i + 2 <= d) {
        const __m256d r0 = _mm256_loadu_pd(rp + 2 * i);
        const __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
        acc0 = _mm256_fmadd_pd(r0, x0, acc0);
        sw0 = _mm256_fmadd_pd(r0, _mm256_permute_pd(x0, 0b0101), sw0);
        i += 2;
    }
    cplx out = reduce_conj_dot(_mm256_add_pd(acc0, acc1), _mm256_add_pd(sw0, sw1));
    if (i < d) {
        out += cplx(r[i].real() * x[i].real() + r[i].imag() * x[i].imag(),
                    r[i].real() * x[i].imag() - r[i].imag() * x[i].real());
    }
    return out;
}

void overlaps_avx2(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, cplx *out) {
    for (std::size_t j = 0; j < count; ++j) out[j] = conj_dot(rows + j * d, x, d);
}

void overlap_norms_avx2(const cplx *rows, std::size_t count, std::size_t d, const cplx *x, double *out) {
    for (std::size_t j = 0; j < count; ++j) out[j] = std::norm(conj_dot(rows + j * d, x, d));
}

void combine_avx2(const cplx *rows, std::size_t count, std::size_t d, const cplx *coeff, cplx *y) {
    double *yp = reinterpret_cast<double *>(y);
    for (std::size_t j = 0; j < count; ++j) {
        const double *rp = reinterpret_cast<const double *>(rows + j * d);
        const __m256d cr = _mm256_set1_pd(coeff[j].real());
        const __m256d ci = _mm256_set1_pd(coeff[j].imag());
        std::size_t i = 0;
        for (; i + 2 <= d; i += 2) {
            const __m256d r = _mm256_loadu_pd(rp + 2 * i);
            __m256d acc = _mm256_loadu_pd(yp + 2 * i);
            acc = _mm256_fmadd_pd(cr, r, acc);
            // [y_re - ci*r_im, y_im + ci*r_re]
            acc = _mm256_addsub_pd(acc, _mm256_mul_pd(ci, _mm256_permute_pd(r, 0b0101)));
            _mm256_storeu_pd(yp + 2 * i, acc);
        }
        if (i < d) y[i] += coeff[j] * rows[j * d + i];
    }
}

void abs2_avx2(const cplx *v, std::size_t n, double *out) {
    const double *p = reinterpret_cast<const double *>(v);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(p + 2 * i);
        const __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < n; ++i) out[i] = v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
}

constexpr KernelTable kAvx2{"avx2", overlaps_avx2, overlap_norms_avx2, combine_avx2, abs2_avx2};

}  // namespace

const KernelTable &avx2_table_unchecked() noexcept { return kAvx2; }

}  // namespace qdl::simd
