// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 vortexsim contributors
#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the physics modules. Every kernel has
// a scalar reference implementation and, on x86-64, an AVX2+FMA variant; the
// active set is chosen once at runtime from CPU capabilities. Set
// VORTEX_KERNELS=scalar (or avx2) in the environment to override.
//
// SIMD variants accumulate in a different order than the reference, so
// reductions agree with scalar only to roundoff; the equivalence tests bound
// that difference.

namespace vortex::kernels {

using cdouble = std::complex<double>;

/// Sum of |a_i|^2.
double sum_abs2(std::span<const cdouble> a);

/// Sum of conj(a_i) * b_i.
cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b);

/// Sum of a_i * b_i (no conjugation; used with conjugate-symmetric modes).
cdouble dot_mul(std::span<const cdouble> a, std::span<const cdouble> b);

/// Sum of a_i * b_i for real arrays.
double dot_real(std::span<const double> a, std::span<const double> b);

/// out_i = a_i * b_i.
void cmul(std::span<const cdouble> a, std::span<const cdouble> b,
          std::span<cdouble> out);

/// out_i = conj(a_i) * b_i.
void cmul_conj(std::span<const cdouble> a, std::span<const cdouble> b,
               std::span<cdouble> out);

/// One full set of kernel entry points.
struct Variants {
    double (*sum_abs2)(const cdouble*, std::size_t);
    cdouble (*dot_conj)(const cdouble*, const cdouble*, std::size_t);
    cdouble (*dot_mul)(const cdouble*, const cdouble*, std::size_t);
    double (*dot_real)(const double*, const double*, std::size_t);
    void (*cmul)(const cdouble*, const cdouble*, cdouble*, std::size_t);
    void (*cmul_conj)(const cdouble*, const cdouble*, cdouble*, std::size_t);
    const char* name;
};

/// Scalar reference set; always available.
const Variants& scalar_variants();

/// SIMD set, or nullptr when the build or the CPU does not support it.
const Variants* simd_variants();

/// The set the free functions above dispatch to.
const Variants& active_variants();

/// Name of the active set: "scalar" or "avx2".
const char* active_name();

} // namespace vortex::kernels
