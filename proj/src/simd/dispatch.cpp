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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "qdl/simd/kernels.hpp"

namespace qdl::simd {

#ifdef QDL_HAVE_AVX2
const KernelTable &avx2_table_unchecked() noexcept;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(QDL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *initial_table() noexcept {
    const KernelTable *best = avx2_kernels();
    if (const char *env = std::getenv("QDL_SIMD")) {
        const std::string_view v(env);
        if (v == "scalar") return &scalar_kernels();
        if (v == "avx2" && best) return best;
    }
    return best ? best : &scalar_kernels();
}

std::atomic<const KernelTable *> &active() noexcept {
    static std::atomic<const KernelTable *> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable *avx2_kernels() noexcept {
#ifdef QDL_HAVE_AVX2
    static const bool ok = cpu_has_avx2();
    return ok ? &avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &kernels() noexcept { return *active().load(std::memory_order_relaxed); }

bool select_isa(Isa isa) noexcept {
    if (isa == Isa::Scalar) {
        active().store(&scalar_kernels());
        return true;
    }
    const KernelTable *t = avx2_kernels();
    if (!t) return false;
    active().store(t);
    return true;
}

std::string_view active_isa_name() noexcept { return kernels().name; }

}  // namespace qdl::simd
