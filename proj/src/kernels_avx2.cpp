// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
//
// AVX2+FMA kernel variants. Complex doubles are interleaved [re, im], two per
// 256-bit register. This is the only TU compiled with -mavx2 -mfma; the
// dispatcher hands these out only after __builtin_cpu_supports agrees.

#include "vortex/kernels.hpp"

#include <immintrin.h>

namespace vortex::kernels {

namespace {

inline double hsum4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Reduce an interleaved [re, im, re, im] accumulator to one complex number.
inline cdouble hsum_c(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, lo);
    return {out[0], out[1]};
}

// a*b for two interleaved complex doubles.
inline __m256d cmul2(__m256d va, __m256d vb) {
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    return _mm256_fmaddsub_pd(va, b_re, _mm256_mul_pd(a_sw, b_im));
}

// conj(a)*b for two interleaved complex doubles.
inline __m256d cmul_conj2(__m256d va, __m256d vb) {
    const __m256d a_re = _mm256_movedup_pd(va);
    const __m256d a_im = _mm256_permute_pd(va, 0xF);
    const __m256d b_sw = _mm256_permute_pd(vb, 0x5);
    return _mm256_fmsubadd_pd(vb, a_re, _mm256_mul_pd(b_sw, a_im));
}

double sum_abs2_avx2(const cdouble* a, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    const std::size_t nd = 2 * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= nd; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(p + i);
        const __m256d v1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double acc = hsum4(_mm256_add_pd(acc0, acc1));
    for (; i < nd; ++i) acc += p[i] * p[i];
    return acc;
}

cdouble dot_conj_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, cmul_conj2(_mm256_loadu_pd(pa + 2 * i),
                                              _mm256_loadu_pd(pb + 2 * i)));
        acc1 = _mm256_add_pd(acc1, cmul_conj2(_mm256_loadu_pd(pa + 2 * i + 4),
                                              _mm256_loadu_pd(pb + 2 * i + 4)));
    }
    cdouble acc = hsum_c(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        acc += cdouble{ar * br + ai * bi, ar * bi - ai * br};
    }
    return acc;
}

cdouble dot_mul_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, cmul2(_mm256_loadu_pd(pa + 2 * i),
                                         _mm256_loadu_pd(pb + 2 * i)));
        acc1 = _mm256_add_pd(acc1, cmul2(_mm256_loadu_pd(pa + 2 * i + 4),
                                         _mm256_loadu_pd(pb + 2 * i + 4)));
    }
    cdouble acc = hsum_c(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        acc += cdouble{ar * br - ai * bi, ar * bi + ai * br};
    }
    return acc;
}

double dot_real_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    double acc = hsum4(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void cmul_avx2(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(po + 2 * i, cmul2(_mm256_loadu_pd(pa + 2 * i),
                                           _mm256_loadu_pd(pb + 2 * i)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void cmul_conj_avx2(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(po + 2 * i, cmul_conj2(_mm256_loadu_pd(pa + 2 * i),
                                                _mm256_loadu_pd(pb + 2 * i)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br + ai * bi, ar * bi - ai * br};
    }
}

const Variants kAvx2 = {
    sum_abs2_avx2, dot_conj_avx2, dot_mul_avx2,
    dot_real_avx2, cmul_avx2,     cmul_conj_avx2,
    "avx2",
};

} // namespace

const Variants* simd_variants() {
    static const Variants* table = []() -> const Variants* {
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
            return &kAvx2;
        return nullptr;
    }();
    return table;
}

} // namespace vortex::kernels
