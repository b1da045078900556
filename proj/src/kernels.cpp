// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors

#include "vortex/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace vortex::kernels {

namespace {

double sum_abs2_scalar(const cdouble* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = a[i].real(), im = a[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

cdouble dot_conj_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

cdouble dot_mul_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

double dot_real_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void cmul_scalar(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void cmul_conj_scalar(const cdouble* a, const cdouble* b, cdouble* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br + ai * bi, ar * bi - ai * br};
    }
}

const Variants kScalar = {
    sum_abs2_scalar, dot_conj_scalar, dot_mul_scalar,
    dot_real_scalar, cmul_scalar,     cmul_conj_scalar,
    "scalar",
};

const Variants* resolve_active() {
    const Variants* simd = simd_variants();
    const char* force = std::getenv("VORTEX_KERNELS");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return &kScalar;
        if (simd != nullptr && std::strcmp(force, simd->name) == 0) return simd;
        // Unknown or unavailable override: fall through to the default.
    }
    return simd != nullptr ? simd : &kScalar;
}

} // namespace

const Variants& scalar_variants() { return kScalar; }

#if !defined(VORTEX_HAVE_AVX2_TU)
const Variants* simd_variants() { return nullptr; }
#endif

const Variants& active_variants() {
    static const Variants* active = resolve_active();
    return *active;
}

const char* active_name() { return active_variants().name; }

double sum_abs2(std::span<const cdouble> a) {
    return active_variants().sum_abs2(a.data(), a.size());
}

cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b) {
    return active_variants().dot_conj(a.data(), b.data(), a.size());
}

cdouble dot_mul(std::span<const cdouble> a, std::span<const cdouble> b) {
    return active_variants().dot_mul(a.data(), b.data(), a.size());
}

double dot_real(std::span<const double> a, std::span<const double> b) {
    return active_variants().dot_real(a.data(), b.data(), a.size());
}

void cmul(std::span<const cdouble> a, std::span<const cdouble> b,
          std::span<cdouble> out) {
    active_variants().cmul(a.data(), b.data(), out.data(), a.size());
}

void cmul_conj(std::span<const cdouble> a, std::span<const cdouble> b,
               std::span<cdouble> out) {
    active_variants().cmul_conj(a.data(), b.data(), out.data(), a.size());
}

} // namespace vortex::kernels
